// Copyright 2026 The tritccp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Classical one-trit protocols for the same game.
 *
 * Each party maps its register value (y, x) in {0,1,2} x {0,1} to a sent
 * trit. All parties send simultaneously; the referee sees the k-trit
 * transcript and guesses the G-value with the most consistent admissible
 * inputs (ties to the smallest trit). Success probabilities are exact
 * rationals under the uniform distribution over admissible inputs.
 *
 * Two evaluators compute the same number independently:
 *  - evaluate_exhaustive walks every admissible input (small k only);
 *  - evaluate_collapsed groups parties with identical strategies and counts
 *    inputs per class of transcripts with a residue convolution.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tritccp/combinatorics.hpp"
#include "tritccp/random.hpp"

namespace tritccp::classical {

inline constexpr std::size_t kRegisterValues = 6;

/// Register values are ordered (0,0), (0,1), (1,0), (1,1), (2,0), (2,1).
constexpr std::size_t register_index(unsigned y, unsigned x) { return 2 * y + x; }
constexpr unsigned register_trit(std::size_t index) { return static_cast<unsigned>(index / 2); }
constexpr unsigned register_bit(std::size_t index) { return static_cast<unsigned>(index % 2); }

/// Total map from the six register values to a sent trit.
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::array<Trit, kRegisterValues> table) : table_(table) {
    for (const auto t : table_)
      if (t > 2) throw std::invalid_argument("strategy entries must be trits");
  }

  /// Six characters '0'..'2' in register order.
  static Strategy parse(std::string_view text) {
    if (text.size() != kRegisterValues) {
      throw std::invalid_argument("strategy string must have 6 trits, got '" + std::string(text) + "'");
    }
    std::array<Trit, kRegisterValues> table{};
    for (std::size_t i = 0; i < kRegisterValues; ++i) {
      if (text[i] < '0' || text[i] > '2') throw std::invalid_argument("bad trit in strategy '" + std::string(text) + "'");
      table[i] = static_cast<Trit>(text[i] - '0');
    }
    return Strategy(table);
  }

  std::string to_string() const {
    std::string out;
    for (const auto t : table_) out.push_back(static_cast<char>('0' + t));
    return out;
  }

  Trit send(unsigned y, unsigned x) const { return table_[register_index(y, x)]; }
  Trit operator[](std::size_t reg) const { return table_[reg]; }
  const std::array<Trit, kRegisterValues>& table() const { return table_; }

  /// Register indices mapped to `sent`, ascending.
  std::vector<std::size_t> cell(Trit sent) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < kRegisterValues; ++r)
      if (table_[r] == sent) out.push_back(r);
    return out;
  }

  /// Same partition with sent label t renamed to relabel[t].
  Strategy relabeled(const std::array<Trit, 3>& relabel) const {
    std::array<Trit, kRegisterValues> out{};
    for (std::size_t r = 0; r < kRegisterValues; ++r) out[r] = relabel.at(table_[r]);
    return Strategy(out);
  }

  /// Relabeling in which labels first appear in the order 0, 1, 2.
  Strategy first_occurrence_form() const {
    std::array<int, 3> relabel{-1, -1, -1};
    Trit next = 0;
    std::array<Trit, kRegisterValues> out{};
    for (std::size_t r = 0; r < kRegisterValues; ++r) {
      if (relabel[table_[r]] < 0) relabel[table_[r]] = next++;
      out[r] = static_cast<Trit>(relabel[table_[r]]);
    }
    return Strategy(out);
  }

  friend auto operator<=>(const Strategy&, const Strategy&) = default;

 private:
  std::array<Trit, kRegisterValues> table_{};
};

/// Cell sizes of the three preimages, sorted descending, e.g. (3,2,1).
struct DivisionType {
  std::array<unsigned, 3> sizes{};
  std::string to_string() const {
    return "(" + std::to_string(sizes[0]) + "," + std::to_string(sizes[1]) + "," + std::to_string(sizes[2]) + ")";
  }
  friend bool operator==(const DivisionType&, const DivisionType&) = default;
};

inline DivisionType division_type(const Strategy& s) {
  DivisionType type;
  for (const auto t : s.table()) ++type.sizes[t];
  std::sort(type.sizes.begin(), type.sizes.end(), std::greater<>());
  return type;
}

namespace detail {

/// One member of a displayed 0-preimage: a register value whose trit is either
/// fixed or read from a slot (alpha, beta, gamma, delta = 0..3).
struct CellMember {
  int fixed_trit;  // -1 when the trit comes from a slot
  int slot;
  unsigned bit;
};

struct DivisionFamily {
  char name;
  unsigned slot_count;
  std::vector<CellMember> zero_cell;
};

inline const std::vector<DivisionFamily>& division_families() {
  constexpr int kSlot = -1;
  enum { alpha, beta, gamma, delta };
  static const std::vector<DivisionFamily> families = {
      {'A', 0, {{0, 0, 0}, {0, 0, 1}}},
      {'B', 0, {{1, 0, 0}, {0, 0, 1}}},
      {'C', 0, {{1, 0, 1}, {0, 0, 1}}},
      {'D', 0, {{2, 0, 0}, {0, 0, 1}}},
      {'E', 0, {{2, 0, 1}, {0, 0, 1}}},
      {'F', 0, {{1, 0, 0}, {1, 0, 1}, {0, 0, 1}}},
      {'H', 3, {{kSlot, gamma, 0}, {kSlot, beta, 1}, {kSlot, alpha, 1}}},
      {'I', 3, {{kSlot, gamma, 1}, {kSlot, beta, 0}, {kSlot, alpha, 0}}},
      {'J', 3, {{kSlot, gamma, 1}, {kSlot, beta, 1}, {kSlot, alpha, 1}}},
      {'K', 3, {{kSlot, gamma, 0}, {kSlot, beta, 0}, {kSlot, alpha, 0}}},
      {'L', 0, {{1, 0, 0}, {0, 0, 0}, {1, 0, 1}, {0, 0, 1}}},
      {'M', 4, {{kSlot, delta, 0}, {kSlot, gamma, 0}, {kSlot, beta, 1}, {kSlot, alpha, 1}}},
      {'N', 1, {{kSlot, alpha, 0}, {2, 0, 1}, {1, 0, 1}, {0, 0, 1}}},
      {'O', 1, {{kSlot, alpha, 1}, {2, 0, 0}, {1, 0, 0}, {0, 0, 0}}},
  };
  return families;
}

/// Register indices of the 0-cell, or nullopt if two members coincide.
inline std::optional<std::vector<std::size_t>> zero_cell_for(const DivisionFamily& family,
                                                             std::span<const Trit> slots) {
  std::vector<std::size_t> cell;
  for (const auto& member : family.zero_cell) {
    const unsigned y = member.fixed_trit >= 0 ? static_cast<unsigned>(member.fixed_trit) : slots[member.slot];
    const std::size_t reg = register_index(y, member.bit);
    if (std::find(cell.begin(), cell.end(), reg) != cell.end()) return std::nullopt;
    cell.push_back(reg);
  }
  return cell;
}

}  // namespace detail

/// The named division whose 0-preimage is the displayed cell. Registers
/// outside it go to cells 1 and 2 in ascending register order, cell 1
/// taking the larger half. Families with Greek-letter slots take their
/// values in (alpha, beta, gamma, delta) order; when `slots` is empty the
/// lexicographically smallest non-colliding assignment is used.
inline Strategy canonical_division(char name, std::span<const Trit> slots = {}) {
  const auto& families = detail::division_families();
  const auto family = std::find_if(families.begin(), families.end(), [&](const auto& f) { return f.name == name; });
  if (family == families.end()) throw std::invalid_argument(std::string("unknown division '") + name + "'");

  std::optional<std::vector<std::size_t>> zero_cell;
  if (!slots.empty()) {
    if (slots.size() != family->slot_count) {
      throw std::invalid_argument(std::string("division ") + name + " takes " + std::to_string(family->slot_count) +
                                  " slot values");
    }
    for (const auto s : slots)
      if (s > 2) throw std::invalid_argument("slot values must be trits");
    zero_cell = detail::zero_cell_for(*family, slots);
    if (!zero_cell) throw std::invalid_argument(std::string("slot values collide in the 0-cell of division ") + name);
  } else {
    std::vector<Trit> candidate(family->slot_count, 0);
    for (;;) {
      zero_cell = detail::zero_cell_for(*family, candidate);
      if (zero_cell) break;
      std::size_t pos = candidate.size();
      while (pos > 0 && candidate[pos - 1] == 2) candidate[--pos] = 0;
      if (pos == 0) throw std::logic_error("division family has no valid slot assignment");
      ++candidate[pos - 1];
    }
  }

  std::array<Trit, kRegisterValues> table{};
  std::vector<std::size_t> leftover;
  for (std::size_t r = 0; r < kRegisterValues; ++r) {
    if (std::find(zero_cell->begin(), zero_cell->end(), r) != zero_cell->end()) {
      table[r] = 0;
    } else {
      leftover.push_back(r);
    }
  }
  const std::size_t first_half = (leftover.size() + 1) / 2;
  for (std::size_t i = 0; i < leftover.size(); ++i) table[leftover[i]] = i < first_half ? 1 : 2;
  return Strategy(table);
}

/// One strategy per party; k = 1 mod 3, k >= 4.
class StrategyProfile {
 public:
  explicit StrategyProfile(std::vector<Strategy> strategies) : strategies_(std::move(strategies)) {
    const auto k = strategies_.size();
    if (k < 4 || k % 3 != 1) {
      throw std::invalid_argument("profile size must be 1 mod 3 and at least 4, got " + std::to_string(k));
    }
  }

  static StrategyProfile homogeneous(const Strategy& s, unsigned k) {
    return StrategyProfile(std::vector<Strategy>(k, s));
  }

  struct Group {
    Strategy strategy;
    unsigned size = 0;
  };

  /// Parties grouped by identical strategy, in order of first appearance.
  std::vector<Group> groups() const {
    std::vector<Group> out;
    for (const auto& s : strategies_) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Group& g) { return g.strategy == s; });
      if (it == out.end()) {
        out.push_back({s, 1});
      } else {
        ++it->size;
      }
    }
    return out;
  }

  unsigned k() const { return static_cast<unsigned>(strategies_.size()); }
  std::span<const Strategy> strategies() const { return strategies_; }

 private:
  std::vector<Strategy> strategies_;
};

inline constexpr unsigned kExhaustiveLimit = 7;
inline constexpr unsigned kLongRunLimit = 10;

/// MAP referee over every admissible input. Independent of the residue
/// bookkeeping used by evaluate_collapsed: G is computed from the explicit
/// zero count and trit sum of each input.
inline Rational evaluate_exhaustive(const StrategyProfile& profile, bool long_run = false) {
  const unsigned k = profile.k();
  const unsigned limit = long_run ? kLongRunLimit : kExhaustiveLimit;
  if (k > limit) {
    throw std::length_error("exhaustive evaluation limited to k <= " + std::to_string(limit) +
                            (long_run ? "" : " (k = 10 needs the long-run flag)"));
  }
  std::size_t transcripts = 1;
  for (unsigned i = 0; i < k; ++i) transcripts *= 3;
  std::vector<std::array<std::uint64_t, 3>> counts(transcripts, {0, 0, 0});
  const auto strategies = profile.strategies();

  const std::function<void(unsigned, std::size_t, unsigned, unsigned)> walk =
      [&](unsigned party, std::size_t transcript, unsigned zeros, unsigned trit_sum) {
        if (party == k) {
          if (zeros % 3 != 0) return;
          ++counts[transcript][(trit_sum + zeros / 3) % 3];
          return;
        }
        for (unsigned y = 0; y < 3; ++y) {
          for (unsigned x = 0; x < 2; ++x) {
            walk(party + 1, transcript * 3 + strategies[party].send(y, x), zeros + (x == 0), trit_sum + y);
          }
        }
      };
  walk(0, 0, 0, 0);

  std::uint64_t best = 0;
  std::uint64_t total = 0;
  for (const auto& c : counts) {
    best += std::max({c[0], c[1], c[2]});
    total += c[0] + c[1] + c[2];
  }
  return Rational(BigCount(best), BigCount(total));
}

/// Counts indexed by (3 * trit sum + zero count) mod 9.
///
/// That single residue carries everything G needs: the input is admissible
/// iff the residue is 0 mod 3 (zero count = 0 mod 3), and then
/// residue / 3 = trit sum + zero count / 3 = G (mod 3).
using ResidueCounts = std::array<BigCount, 9>;

inline unsigned register_residue(std::size_t reg) {
  return (3 * register_trit(reg) + (register_bit(reg) == 0 ? 1u : 0u)) % 9;
}

inline ResidueCounts convolve(const ResidueCounts& a, const ResidueCounts& b) {
  ResidueCounts out{};
  for (unsigned i = 0; i < 9; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < 9; ++j) {
      if (b[j] != 0) out[(i + j) % 9] += a[i] * b[j];
    }
  }
  return out;
}

inline ResidueCounts unit_residue() {
  ResidueCounts r{};
  r[0] = 1;
  return r;
}

/// One class of transcripts: the same number of parties in each group sends each trit.
struct TranscriptClassStats {
  /// Per group, how many parties send 0, 1, 2.
  std::vector<std::array<unsigned, 3>> sent_counts;
  /// Admissible inputs consistent with any single transcript of the class, per G-value.
  std::array<BigCount, 3> admissible_by_g;
  /// Number of distinct transcripts in the class.
  BigCount multiplicity;

  Trit guess() const {
    Trit best = 0;
    for (Trit v = 1; v < 3; ++v)
      if (admissible_by_g[v] > admissible_by_g[best]) best = v;
    return best;
  }
};

namespace detail {

struct GroupClass {
  std::array<unsigned, 3> sent{};
  ResidueCounts residues{};
  BigCount multiplicity;
};

inline std::vector<GroupClass> group_classes(const StrategyProfile::Group& group) {
  std::array<ResidueCounts, 3> cell{};
  for (std::size_t r = 0; r < kRegisterValues; ++r) cell[group.strategy[r]][register_residue(r)] += 1;

  // powers[t][c]: residue counts of c parties all sending t.
  std::array<std::vector<ResidueCounts>, 3> powers;
  for (unsigned t = 0; t < 3; ++t) {
    powers[t].push_back(unit_residue());
    for (unsigned c = 1; c <= group.size; ++c) powers[t].push_back(convolve(powers[t].back(), cell[t]));
  }

  std::vector<GroupClass> classes;
  for (unsigned c0 = 0; c0 <= group.size; ++c0) {
    for (unsigned c1 = 0; c0 + c1 <= group.size; ++c1) {
      const unsigned c2 = group.size - c0 - c1;
      ResidueCounts residues = convolve(convolve(powers[0][c0], powers[1][c1]), powers[2][c2]);
      if (std::all_of(residues.begin(), residues.end(), [](const auto& v) { return v == 0; })) continue;
      const std::array<std::uint64_t, 3> parts{c0, c1, c2};
      classes.push_back({{c0, c1, c2}, std::move(residues), multinomial(parts)});
    }
  }
  return classes;
}

}  // namespace detail

/// Calls visit(const TranscriptClassStats&) for every transcript class with
/// at least one consistent input (admissible or not).
template <class Visitor>
void for_each_transcript_class(const StrategyProfile& profile, Visitor&& visit) {
  const auto groups = profile.groups();
  std::vector<std::vector<detail::GroupClass>> per_group;
  per_group.reserve(groups.size());
  for (const auto& g : groups) per_group.push_back(detail::group_classes(g));

  TranscriptClassStats stats;
  stats.sent_counts.resize(groups.size());
  const std::function<void(std::size_t, const ResidueCounts&, const BigCount&)> descend =
      [&](std::size_t g, const ResidueCounts& acc, const BigCount& multiplicity) {
        if (g == groups.size()) {
          for (unsigned v = 0; v < 3; ++v) stats.admissible_by_g[v] = acc[3 * v];
          stats.multiplicity = multiplicity;
          visit(static_cast<const TranscriptClassStats&>(stats));
          return;
        }
        for (const auto& cls : per_group[g]) {
          stats.sent_counts[g] = cls.sent;
          descend(g + 1, convolve(acc, cls.residues), multiplicity * cls.multiplicity);
        }
      };
  descend(0, unit_residue(), BigCount(1));
}

/// Same quantity as evaluate_exhaustive, by transcript classes.
inline Rational evaluate_collapsed(const StrategyProfile& profile) {
  BigCount best = 0;
  BigCount total = 0;
  for_each_transcript_class(profile, [&](const TranscriptClassStats& cls) {
    const auto& c = cls.admissible_by_g;
    best += cls.multiplicity * std::max({c[0], c[1], c[2]});
    total += cls.multiplicity * (c[0] + c[1] + c[2]);
  });
  return Rational(best, total);
}

/// One strategy per orbit of the six sent-alphabet relabelings (122 orbits),
/// each in first-occurrence form, ascending.
inline std::vector<Strategy> sent_alphabet_representatives() {
  std::vector<Strategy> out;
  std::array<Trit, kRegisterValues> table{};
  for (unsigned code = 0; code < 729; ++code) {
    unsigned rest = code;
    for (std::size_t r = kRegisterValues; r-- > 0;) {
      table[r] = static_cast<Trit>(rest % 3);
      rest /= 3;
    }
    const Strategy s(table);
    if (s.first_occurrence_form() == s) out.push_back(s);
  }
  return out;
}

struct HomogeneousOptimum {
  Strategy strategy;
  Rational probability;
};

/// Best strategy when every party uses the same one. Ties keep the first representative.
inline HomogeneousOptimum best_homogeneous(unsigned k) {
  std::optional<HomogeneousOptimum> best;
  for (const auto& s : sent_alphabet_representatives()) {
    Rational p = evaluate_collapsed(StrategyProfile::homogeneous(s, k));
    if (!best || p > best->probability) best = HomogeneousOptimum{s, std::move(p)};
  }
  return *best;
}

struct ProfileSearchResult {
  std::vector<StrategyProfile::Group> groups;
  Rational probability;
  unsigned evaluations = 0;
  unsigned improvements = 0;

  StrategyProfile profile() const {
    std::vector<Strategy> all;
    for (const auto& g : groups) all.insert(all.end(), g.size, g.strategy);
    return StrategyProfile(std::move(all));
  }
};

/// Randomized local search over heterogeneous profiles with at most
/// `max_groups` distinct strategies. Starts from the best homogeneous
/// profile; each round moves a random number of parties from one group to
/// a random strategy and keeps the move if the exact success strictly improves.
inline ProfileSearchResult search_profiles(unsigned k, std::uint64_t seed, unsigned rounds, unsigned max_groups = 3) {
  const auto start = best_homogeneous(k);
  ProfileSearchResult result{{{start.strategy, k}}, start.probability, 0, 0};
  const auto candidates = sent_alphabet_representatives();
  SeededSource rng(seed);
  for (unsigned round = 0; round < rounds; ++round) {
    const Strategy& incoming = candidates[rng.below(candidates.size())];
    auto groups = result.groups;
    auto& donor = groups[rng.below(groups.size())];
    if (donor.strategy == incoming) continue;
    const auto moved = static_cast<unsigned>(1 + rng.below(donor.size));
    donor.size -= moved;
    auto target = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.strategy == incoming; });
    if (target == groups.end()) {
      groups.push_back({incoming, moved});
    } else {
      target->size += moved;
    }
    std::erase_if(groups, [](const auto& g) { return g.size == 0; });
    if (groups.size() > max_groups) continue;

    ProfileSearchResult candidate{groups, 0, 0, 0};
    Rational p = evaluate_collapsed(candidate.profile());
    ++result.evaluations;
    if (p > result.probability) {
      result.groups = std::move(groups);
      result.probability = std::move(p);
      ++result.improvements;
    }
  }
  return result;
}

/// k = 10, every party uses division A, every party sends 0.
struct WorkedExampleRow {
  unsigned zero_bits = 0;       // parties holding (0,0)
  unsigned one_bits = 0;        // parties holding (0,1)
  BigCount cases;
  Trit g_value = 0;             // G from its definition
  Trit reference_label = 0;     // label attached to this row in the reference worked example
};

struct WorkedExampleReport {
  unsigned k = 10;
  Strategy strategy;
  std::string transcript;
  std::vector<WorkedExampleRow> rows;  // zero_bits = 9, 6, 3, 0
  BigCount total;
  std::array<BigCount, 3> cases_by_g;
  Trit guess = 0;
  BigCount majority;
  Rational success;
  std::string label_note;
};

/// Enumerates the 2^10 register assignments consistent with the all-zero
/// transcript under division A and tallies the admissible ones.
inline WorkedExampleReport reproduce_worked_example() {
  constexpr unsigned k = 10;
  WorkedExampleReport report;
  report.strategy = canonical_division('A');
  report.transcript = std::string(k, '0');
  const auto cell = report.strategy.cell(0);  // (0,0) and (0,1)

  std::array<BigCount, k + 1> by_zero_count{};
  std::vector<std::size_t> choice(k, 0);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    unsigned zeros = 0;
    unsigned trit_sum = 0;
    for (unsigned i = 0; i < k; ++i) {
      const std::size_t reg = cell[(mask >> i) & 1u];
      zeros += register_bit(reg) == 0;
      trit_sum += register_trit(reg);
    }
    if (zeros % 3 != 0 || trit_sum != 0) continue;
    by_zero_count[zeros] += 1;
  }

  // Labels printed next to the m = 9, 6, 3, 0 rows of the reference example.
  constexpr std::array<std::pair<unsigned, Trit>, 4> reference_labels{{{9, 1}, {6, 0}, {3, 2}, {0, 1}}};
  for (const auto& [m, label] : reference_labels) {
    WorkedExampleRow row;
    row.zero_bits = m;
    row.one_bits = k - m;
    row.cases = by_zero_count[m];
    row.g_value = static_cast<Trit>((m / 3) % 3);  // all Y are 0
    row.reference_label = label;
    report.total += row.cases;
    report.cases_by_g[row.g_value] += row.cases;
    report.rows.push_back(std::move(row));
  }
  for (Trit v = 1; v < 3; ++v)
    if (report.cases_by_g[v] > report.cases_by_g[report.guess]) report.guess = v;
  report.majority = report.cases_by_g[report.guess];
  report.success = Rational(report.majority, report.total);
  report.label_note =
      "g_value follows G = (sum Y + m/3) mod 3; the reference labels are g_value + 1 (mod 3). "
      "Counts and the majority share do not depend on the labels.";
  return report;
}

}  // namespace tritccp::classical
