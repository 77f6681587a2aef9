#include "pcmri/pcm.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace pcmri {

namespace {

void check_order(int n) {
  if (n < 2 || n > kMaxOrder)
    throw std::invalid_argument("matrix order must be in [2, " +
                                std::to_string(kMaxOrder) + "], got " +
                                std::to_string(n));
}

void check_value(double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument("comparison values must be positive and finite");
}

double parse_number(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("not a number: '" + std::string(token) + "'");
  return value;
}

std::string format_value(double v) {
  const double r = std::round(v);
  if (r >= 1.0 && v == r) return std::to_string(static_cast<long long>(r));
  const double k = std::round(1.0 / v);
  if (k >= 2.0 && v == 1.0 / k)
    return "1/" + std::to_string(static_cast<long long>(k));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

IncompletePCM::IncompletePCM(int n) : n_(n) {
  check_order(n);
  entries_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) entries_[i * n + i] = 1.0;
}

IncompletePCM IncompletePCM::from_upper(int n,
                                        std::span<const UpperEntry> entries) {
  IncompletePCM pcm(n);
  std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
  for (const auto& e : entries) {
    if (e.i < 0 || e.j >= n || e.i >= e.j)
      throw std::invalid_argument("entry (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) +
                                  ") is not above the diagonal of an order " +
                                  std::to_string(n) + " matrix");
    if (seen[e.i * n + e.j])
      throw std::invalid_argument("pair (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ") given twice");
    seen[e.i * n + e.j] = true;
    if (e.value) pcm.set_comparison(e.i, e.j, *e.value);
  }
  return pcm;
}

void IncompletePCM::check_pair(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
    throw std::invalid_argument("bad comparison indices (" + std::to_string(i) +
                                ", " + std::to_string(j) + ") for order " +
                                std::to_string(n_));
}

std::optional<double> IncompletePCM::at(int i, int j) const {
  if (i == j) return 1.0;
  check_pair(i, j);
  const double v = raw(i, j);
  if (v == 0.0) return std::nullopt;
  return v;
}

bool IncompletePCM::is_known(int i, int j) const { return at(i, j).has_value(); }

int IncompletePCM::missing_count() const {
  int m = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (raw(i, j) == 0.0) ++m;
  return m;
}

std::vector<Slot> IncompletePCM::missing_slots() const {
  std::vector<Slot> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (raw(i, j) == 0.0) out.push_back({i, j});
  return out;
}

std::vector<Slot> IncompletePCM::known_slots() const {
  std::vector<Slot> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (raw(i, j) != 0.0) out.push_back({i, j});
  return out;
}

void IncompletePCM::set_comparison(int i, int j, double value) {
  check_pair(i, j);
  check_value(value);
  entries_[i * n_ + j] = value;
  entries_[j * n_ + i] = 1.0 / value;
}

void IncompletePCM::clear_comparison(int i, int j) {
  check_pair(i, j);
  if (raw(i, j) == 0.0)
    throw std::invalid_argument("comparison (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") is already missing");
  entries_[i * n_ + j] = 0.0;
  entries_[j * n_ + i] = 0.0;
}

Matrix IncompletePCM::filled(double fill) const {
  Matrix a(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const double v = raw(i, j);
      a(i, j) = v == 0.0 ? fill : v;
    }
  return a;
}

double parse_ratio(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty value");
  double value = 0.0;
  if (auto slash = token.find('/'); slash != std::string_view::npos) {
    const double p = parse_number(token.substr(0, slash));
    const double q = parse_number(token.substr(slash + 1));
    if (q == 0.0) throw std::invalid_argument("zero denominator in '" +
                                              std::string(token) + "'");
    value = p / q;
  } else {
    value = parse_number(token);
  }
  check_value(value);
  return value;
}

IncompletePCM parse_pcm(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw std::invalid_argument("missing matrix order");
  check_order(n);
  std::vector<std::string> tokens;
  tokens.reserve(static_cast<std::size_t>(n) * n);
  std::string tok;
  for (int k = 0; k < n * n; ++k) {
    if (!(in >> tok))
      throw std::invalid_argument("expected " + std::to_string(n * n) +
                                  " matrix entries, got " + std::to_string(k));
    tokens.push_back(tok);
  }
  if (in >> tok) throw std::invalid_argument("trailing token '" + tok + "'");

  auto cell = [&](int i, int j) -> std::optional<double> {
    const std::string& t = tokens[i * n + j];
    if (t == "*") return std::nullopt;
    return parse_ratio(t);
  };

  IncompletePCM pcm(n);
  for (int i = 0; i < n; ++i) {
    const auto d = cell(i, i);
    if (!d || std::abs(*d - 1.0) > 1e-12)
      throw std::invalid_argument("diagonal entry " + std::to_string(i + 1) +
                                  " must be 1");
    for (int j = i + 1; j < n; ++j) {
      const auto upper = cell(i, j);
      const auto lower = cell(j, i);
      if (upper.has_value() != lower.has_value())
        throw std::invalid_argument(
            "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
            ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
            ") must both be known or both be *");
      if (!upper) continue;
      if (std::abs(*upper * *lower - 1.0) > 1e-6)
        throw std::invalid_argument(
            "entry (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
            ") is not the reciprocal of (" + std::to_string(i + 1) + "," +
            std::to_string(j + 1) + ")");
      pcm.set_comparison(i, j, *upper);
    }
  }
  return pcm;
}

IncompletePCM parse_pcm(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pcm(in);
}

std::string format_pcm(const IncompletePCM& pcm) {
  const int n = pcm.size();
  std::string out = std::to_string(n) + "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ' ';
      const auto v = pcm.at(i, j);
      out += v ? format_value(*v) : "*";
    }
    out += '\n';
  }
  return out;
}

}  // namespace pcmri
