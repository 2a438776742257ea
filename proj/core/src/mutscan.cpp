#include "gbnl/mutscan.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <set>

#include "gbnl/error.hpp"
#include "gbnl/fastbetti.hpp"

namespace gbnl {

std::string_view to_string(SequenceTag tag) { return tag == SequenceTag::kRef ? "REF" : "MUT"; }

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::kPhB0: return "ph_b0";
    case SeriesKind::kPhB1: return "ph_b1";
    case SeriesKind::kGraded: return "graded";
  }
  return "?";
}

const BigInt& CurveSeries::at(std::int64_t epsilon) const {
  auto it = std::find_if(samples.begin(), samples.end(),
                         [&](const CurveSample& s) { return s.epsilon == epsilon; });
  if (it == samples.end()) raise(ErrorCode::kArgument, "series not sampled at epsilon " + std::to_string(epsilon));
  return it->value;
}

namespace {

void check_sequence(std::string_view seq, const char* which) {
  if (auto why = check_nucleotide_sequence(seq, 1)) {
    raise(ErrorCode::kArgument, std::string(which) + " sequence invalid: " + *why);
  }
}

struct ClassProfile {
  std::vector<PhBetti> ph;          // per grid point
  std::vector<BettiTable> graded;  // per grid point
};

ClassProfile profile(const PositionCloud& cloud, const EpsilonGrid& grid) {
  ClassProfile p;
  auto curve = betti_curve(cloud, grid);
  p.graded = std::move(curve.tables);
  for (auto eps : grid) p.ph.push_back(ph_betti(cloud, eps));
  return p;
}

void append_class(std::vector<CurveSeries>& out, SequenceTag tag, TokenClass token, const ClassProfile& p,
                  const EpsilonGrid& grid, const std::set<BettiKey>& keys) {
  CurveSeries b0{tag, token, SeriesKind::kPhB0, std::nullopt, {}};
  CurveSeries b1{tag, token, SeriesKind::kPhB1, std::nullopt, {}};
  for (std::size_t t = 0; t < grid.size(); ++t) {
    b0.samples.push_back({grid[t], p.ph[t].b0});
    b1.samples.push_back({grid[t], p.ph[t].b1});
  }
  out.push_back(std::move(b0));
  out.push_back(std::move(b1));
  for (const auto& key : keys) {
    CurveSeries g{tag, token, SeriesKind::kGraded, key, {}};
    for (std::size_t t = 0; t < grid.size(); ++t) g.samples.push_back({grid[t], p.graded[t].at(key.first, key.second)});
    out.push_back(std::move(g));
  }
}

void collect_keys(const ClassProfile& p, std::set<BettiKey>& keys) {
  for (const auto& table : p.graded) {
    for (const auto& [key, value] : table.entries()) {
      if (key != BettiKey{0, 0}) keys.insert(key);
    }
  }
}

}  // namespace

EpsilonGrid default_mutation_grid(std::string_view ref, std::string_view mut) {
  Position widest = 0;
  for (auto seq : {ref, mut}) {
    for (TokenClass c : kTokenClasses) widest = std::max(widest, extract_positions(seq, c).span());
  }
  const auto length = static_cast<std::int64_t>(std::max(ref.size(), mut.size()));
  return grid_range(0, std::max<std::int64_t>(0, std::min(widest + 1, length)));
}

std::vector<CurveSeries> compare(std::string_view ref, std::string_view mut, const EpsilonGrid& grid) {
  check_sequence(ref, "reference");
  check_sequence(mut, "mutated");
  auto ref_kind = is_dna_like(ref);
  auto mut_kind = is_dna_like(mut);
  if (ref_kind && mut_kind && *ref_kind != *mut_kind) {
    raise(ErrorCode::kArgument, "reference and mutated sequences mix T and U");
  }
  check_grid(grid);

  std::vector<CurveSeries> out;
  for (TokenClass c : kTokenClasses) {
    const auto ref_profile = profile(extract_positions(ref, c), grid);
    const auto mut_profile = profile(extract_positions(mut, c), grid);
    std::set<BettiKey> keys;
    collect_keys(ref_profile, keys);
    collect_keys(mut_profile, keys);
    append_class(out, SequenceTag::kRef, c, ref_profile, grid, keys);
    append_class(out, SequenceTag::kMut, c, mut_profile, grid, keys);
  }
  return out;
}

std::vector<CurveSeries> sequence_series(std::string_view sequence, const EpsilonGrid& grid) {
  check_sequence(sequence, "input");
  check_grid(grid);
  std::vector<CurveSeries> out;
  for (TokenClass c : kTokenClasses) {
    const auto p = profile(extract_positions(sequence, c), grid);
    std::set<BettiKey> keys;
    collect_keys(p, keys);
    append_class(out, SequenceTag::kRef, c, p, grid, keys);
  }
  return out;
}

const CurveSeries* find_series(const std::vector<CurveSeries>& series, SequenceTag tag, TokenClass token,
                               SeriesKind kind, std::optional<BettiKey> key) {
  for (const auto& s : series) {
    if (s.tag == tag && s.token == token && s.kind == kind && s.key == key) return &s;
  }
  return nullptr;
}

void write_series(std::ostream& out, const std::vector<CurveSeries>& series) {
  out << "sequence_tag,token_class,series_kind,i,j,epsilon,value\n";
  for (const auto& s : series) {
    for (const auto& sample : s.samples) {
      out << to_string(s.tag) << ',' << to_string(s.token) << ',' << to_string(s.kind) << ',';
      if (s.key) out << s.key->first << ',' << s.key->second;
      else out << ',';
      out << ',' << sample.epsilon << ',' << sample.value.str() << '\n';
    }
  }
}

}  // namespace gbnl
