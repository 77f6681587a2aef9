#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcmri/graph.hpp"
#include "pcmri/kernels.hpp"
#include "pcmri/monitor.hpp"
#include "pcmri/monitor_http.hpp"
#include "pcmri/pcm.hpp"
#include "pcmri/randindex.hpp"

namespace pcmri::cli {

namespace {

std::string number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

int cmd_enumerate(int n, int m, std::uint64_t probability_samples, std::uint64_t seed,
                  std::ostream& out) {
  write_catalog_csv(out, GraphFamily::enumerate(n, m), probability_samples, seed);
  return kOk;
}

int cmd_ri(int n, int m, const std::string& code, int graph_id, bool exact,
           const TableOptions& options, std::ostream& out) {
  const GraphFamily family = GraphFamily::enumerate(n, m);
  const auto probabilities =
      occurrence_probabilities(family, options.probability_samples, options.seed);
  std::vector<TableRow> rows;
  for (std::size_t c = 0; c < family.classes().size(); ++c) {
    const GraphClass& cls = family.classes()[c];
    if (!code.empty() && cls.canonical_code != code_from_hex(n, code)) continue;
    if (graph_id > 0 && cls.graph_id != graph_id) continue;
    const Sampling sampling = exact || n <= options.exact_max_n
                                  ? Sampling::exact()
                                  : Sampling::monte_carlo(options.samples, options.seed);
    rows.push_back({cls, probabilities[c], random_index(cls, sampling, options.method)});
  }
  if (rows.empty() && (!code.empty() || graph_id > 0))
    throw std::invalid_argument("no class of this family matches the selection");
  write_threshold_csv(out, rows);
  return kOk;
}

int cmd_table(const std::string& n_text, const std::string& m_text, const std::string& figure,
              const std::string& output, const TableOptions& options, std::ostream& out) {
  std::vector<TableRow> rows;
  std::ostringstream csv;
  if (figure == "fig2") {
    rows = figure_spectral_rows(options);
    write_spectral_figure_csv(csv, rows);
  } else if (figure == "fig6") {
    rows = figure_acceptance_rows(options);
    write_acceptance_figure_csv(csv, rows);
  } else if (figure.empty()) {
    rows = build_threshold_table(parse_range(n_text), parse_range(m_text), options);
    write_threshold_csv(csv, rows);
  } else {
    throw std::invalid_argument("unknown figure " + figure + " (use fig2 or fig6)");
  }
  if (output.empty() || output == "-") {
    out << csv.str();
    return kOk;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + output + " for writing");
  file << csv.str();
  file.flush();
  if (!file) throw std::runtime_error("failed writing " + output);
  return kOk;
}

int cmd_check(const std::string& input, const MonitorConfig& config, std::ostream& out,
              std::ostream& err) {
  std::ifstream file(input);
  if (!file) {
    err << "error: cannot read " << input << '\n';
    return kError;
  }
  const IncompletePCM pcm = parse_pcm(file);
  ThresholdCache cache(config);
  const StatusReport r = evaluate(pcm, cache, config);

  out << "n: " << r.n << '\n' << "m: " << r.m << '\n';
  out << "canonical_code: " << r.canonical_code.value_or("") << '\n';
  out << "spectral_radius: " << number(r.spectral_radius, 6) << '\n';
  if (!r.connected) {
    err << "error: the known comparisons do not connect all alternatives; "
           "no unique completion\n";
    return kError;
  }
  out << "lambda_star: " << number(*r.lambda_star, 9) << '\n';
  out << "ci: " << number(*r.ci, 6) << '\n';
  if (!r.ri) {
    out << "verdict: " << to_string(r.verdict) << '\n';
    err << "error: the comparisons form a spanning tree; the threshold is undefined\n";
    return kError;
  }
  out << "ri: " << number(*r.ri, 6) << '\n';
  if (r.naive_ri) {
    out << "naive_ri: " << number(*r.naive_ri, 6) << '\n';
    out << "naive_cr: " << number(*r.ci / *r.naive_ri, 6) << '\n';
  }
  if (!r.cr) {
    out << "verdict: " << to_string(r.verdict) << '\n';
    return kError;
  }
  out << "cr: " << number(*r.cr, 6) << '\n';
  out << "verdict: " << to_string(r.verdict) << '\n';
  return r.verdict == Verdict::kAcceptable ? kOk : kUnacceptable;
}

int cmd_serve(const std::string& listen, const MonitorConfig& config, std::ostream& out) {
  const auto [host, port] = parse_listen_address(listen);
  MonitorService service(config);
  if (const std::size_t restored = service.recover())
    out << "restored " << restored << " sessions from " << config.journal_path << '\n';
  MonitorHttpServer server(service);
  out << "listening on " << host << ':' << port << std::endl;
  if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + listen);
  return kOk;
}

}  // namespace

std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  std::stringstream items(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad range item '" + s + "'");
    return v;
  };
  while (std::getline(items, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dash));
    const int hi = to_int(item.substr(dash + 1));
    if (hi < lo) throw std::invalid_argument("descending range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-conditioned random indices for incomplete pairwise comparison matrices",
               args.empty() ? "pcmri" : args[0]};
  app.require_subcommand(1);

  std::uint64_t samples = 100'000;
  std::uint64_t seed = 42;
  std::uint64_t probability_samples = 1'000'000;
  std::string method_name = "method2";
  int n = 0;
  int m = 0;

  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--samples", samples, "Monte Carlo sample count")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1'000'000'000}));
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--method", method_name, "Completion bounds: method1 or method2")
        ->check(CLI::IsMember({"method1", "method2"}));
  };

  auto* enumerate = app.add_subcommand("enumerate", "Catalog of graph classes as CSV");
  enumerate->add_option("--n", n, "Number of alternatives")->required();
  enumerate->add_option("--m", m, "Number of missing comparisons")->required();
  enumerate->add_option("--probability-samples", probability_samples,
                        "Draws for occurrence probabilities when m > 2");
  enumerate->add_option("--seed", seed, "Random seed");

  std::string code;
  int graph_id = 0;
  bool exact = false;
  auto* ri = app.add_subcommand("ri", "Random index of one (n, m) family or class");
  ri->add_option("--n", n, "Number of alternatives")->required();
  ri->add_option("--m", m, "Number of missing comparisons")->required();
  ri->add_option("--code", code, "Canonical code (hex) of a single class");
  ri->add_option("--graph-id", graph_id, "graph_id of a single class");
  ri->add_flag("--exact", exact, "Enumerate all Saaty assignments");
  ri->add_option("--probability-samples", probability_samples,
                 "Draws for occurrence probabilities when m > 2");
  add_sampling(ri);

  std::string n_range;
  std::string m_range;
  std::string output;
  std::string figure;
  auto* table = app.add_subcommand("table", "Threshold table or figure data as CSV");
  table->add_option("--n", n_range, "Orders, e.g. 5 or 4-6");
  table->add_option("--m", m_range, "Missing counts, e.g. 1-5");
  table->add_option("--output", output, "CSV path (stdout if omitted)");
  table->add_option("--figure", figure, "fig2 or fig6 instead of a table");
  table->add_option("--probability-samples", probability_samples,
                    "Draws for occurrence probabilities when m > 2");
  add_sampling(table);

  std::string input;
  auto* check = app.add_subcommand("check", "Verdict for one matrix file");
  check->add_option("input", input, "Matrix file")->required();
  add_sampling(check);

  std::string listen = "127.0.0.1:8080";
  std::string journal;
  std::uint64_t serve_samples = 20'000;
  auto* serve = app.add_subcommand("serve", "Run the monitoring HTTP service");
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--samples", serve_samples, "Monte Carlo samples per threshold")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1'000'000'000}));
  serve->add_option("--seed", seed, "Random seed");
  serve->add_option("--method", method_name, "Completion bounds: method1 or method2")
      ->check(CLI::IsMember({"method1", "method2"}));
  serve->add_option("--journal", journal, "Append-only session journal");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kError;
  }

  apply_thread_limit_from_env();
  try {
    const CompletionMethod method = CompletionMethod::parse(method_name);
    TableOptions options;
    options.samples = samples;
    options.seed = seed;
    options.probability_samples = probability_samples;
    options.method = method;

    if (*enumerate) return cmd_enumerate(n, m, probability_samples, seed, out);
    if (*ri) return cmd_ri(n, m, code, graph_id, exact, options, out);
    if (*table) return cmd_table(n_range, m_range, figure, output, options, out);

    MonitorConfig config;
    config.seed = seed;
    config.method = method;
    if (*check) {
      config.samples = samples;
      return cmd_check(input, config, out, err);
    }
    config.samples = serve_samples;
    config.journal_path = journal;
    return cmd_serve(listen, config, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace pcmri::cli
