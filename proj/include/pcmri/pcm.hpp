#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcmri/linalg.hpp"

namespace pcmri {

/// Unordered pair of alternatives, stored with i < j.
struct Slot {
  int i = 0;
  int j = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Above-diagonal cell used to build a matrix. An empty value marks the
/// comparison as missing.
struct UpperEntry {
  int i = 0;
  int j = 0;
  std::optional<double> value;
};

/// Reciprocal n x n matrix in which symmetric pairs of comparisons may be
/// missing.
///
/// Invariants: the diagonal is 1, a known a_ij has a_ji == 1 / a_ij, and
/// a missing a_ij has a missing a_ji. Indices are 0-based.
class IncompletePCM {
 public:
  /// All off-diagonal comparisons missing.
  explicit IncompletePCM(int n);

  /// Throws std::invalid_argument on a bad order, an index outside
  /// 0 <= i < j < n, a pair given twice or a non-positive value.
  static IncompletePCM from_upper(int n, std::span<const UpperEntry> entries);

  int size() const { return n_; }

  /// Empty when the comparison is missing. a(i, i) is always 1.
  std::optional<double> at(int i, int j) const;
  bool is_known(int i, int j) const;

  /// Number of missing pairs above the diagonal.
  int missing_count() const;
  /// Missing / known pairs in row-major order of the upper triangle.
  std::vector<Slot> missing_slots() const;
  std::vector<Slot> known_slots() const;

  /// Sets a_ij = value and a_ji = 1 / value. Either order of (i, j) works.
  void set_comparison(int i, int j, double value);
  /// Marks the pair missing again. Throws std::invalid_argument if it
  /// already is.
  void clear_comparison(int i, int j);

  /// Dense copy with every missing entry replaced by fill.
  Matrix filled(double fill) const;

  friend bool operator==(const IncompletePCM&, const IncompletePCM&) = default;

 private:
  void check_pair(int i, int j) const;
  double raw(int i, int j) const { return entries_[i * n_ + j]; }

  int n_;
  // Row-major; 0 marks a missing entry since real entries are positive.
  std::vector<double> entries_;
};

/// Parses "p/q", a decimal, or an integer. Throws std::invalid_argument.
double parse_ratio(std::string_view token);

/// Reads the matrix text format: the order n on the first line, then n rows
/// of n whitespace separated tokens, `*` for a missing comparison. The lower
/// triangle must mirror the upper one (reciprocal within 1e-6 relative, same
/// missing pattern); the stored matrix uses exact reciprocals of the upper
/// triangle.
IncompletePCM parse_pcm(std::istream& in);
IncompletePCM parse_pcm(std::string_view text);

/// Inverse of parse_pcm. Values are written with up to 17 significant
/// digits; reciprocals of integers are written as 1/k.
std::string format_pcm(const IncompletePCM& pcm);

}  // namespace pcmri
