#pragma once

// Bowlership classification. For a qualifying pair and one direction
// (A with partner B), the runs-per-over sample of A inside the pair's
// alternation runs is compared against A's reference sample with three
// Mann-Whitney tests (greater / two-sided / less). Rejecting "greater"
// and "two-sided" yields a positive bowlership edge A->B; rejecting
// "less" and "two-sided" yields a negative one; otherwise no edge.

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bowlership/errors.hpp"
#include "bowlership/mann_whitney.hpp"
#include "bowlership/overs.hpp"
#include "bowlership/pairing.hpp"

namespace bowlership {

enum class Metric { Economy, Hitrate };

inline const char* metric_name(Metric m) { return m == Metric::Economy ? "economy" : "hitrate"; }

enum class EdgeSign { Positive, Negative };

inline const char* sign_name(EdgeSign s) { return s == EdgeSign::Positive ? "positive" : "negative"; }

// Which overs form the reference ("individual") sample: the bowler's whole
// career, or the career minus the overs shared with this partner.
enum class IndividualSet { AllOvers, ExcludePair };

inline const char* individual_set_name(IndividualSet s) {
  return s == IndividualSet::AllOvers ? "all_overs" : "exclude_pair";
}

struct BowlershipEdge {
  std::string from;
  std::string to;
  Metric metric = Metric::Economy;
  EdgeSign sign = EdgeSign::Positive;
  MWResult mw;
  int pair_overs = 0;
};

struct ClassifyOptions {
  double alpha = 0.05;
  int exact_cutoff = 20;
  IndividualSet individual_set = IndividualSet::AllOvers;
};

namespace detail {

inline double metric_value(const OverRecord& r, Metric m) {
  return m == Metric::Economy ? static_cast<double>(r.runs_charged)
                              : static_cast<double>(r.wickets_credited);
}

inline std::tuple<std::string, std::string, std::string, std::string> over_key(
    const OverRecord& r) {
  return {r.match_id, std::to_string(r.innings), std::to_string(r.over_idx), r.bowler};
}

}  // namespace detail

// One direction of the protocol: `bowler` is the pair member under test,
// `pair_overs_of_bowler` their overs inside the pair's runs, and
// `career_overs` their full career record list. Only complete overs enter
// the samples. Returns the edge, or nullopt for a non-bowlership.
inline std::optional<BowlershipEdge> classify_direction(
    const std::string& bowler, const std::string& partner,
    const std::vector<OverRecord>& pair_overs_of_bowler,
    const std::vector<OverRecord>& career_overs, Metric metric, const ClassifyOptions& opts,
    int pair_overs_total) {
  std::set<std::tuple<std::string, std::string, std::string, std::string>> in_pair;
  if (opts.individual_set == IndividualSet::ExcludePair)
    for (const auto& r : pair_overs_of_bowler) in_pair.insert(detail::over_key(r));

  std::vector<double> bowlership_sample;
  for (const auto& r : pair_overs_of_bowler)
    if (r.complete) bowlership_sample.push_back(detail::metric_value(r, metric));

  std::vector<double> individual_sample;
  for (const auto& r : career_overs) {
    if (!r.complete) continue;
    if (opts.individual_set == IndividualSet::ExcludePair && in_pair.count(detail::over_key(r)))
      continue;
    individual_sample.push_back(detail::metric_value(r, metric));
  }

  if (bowlership_sample.size() < 2 || individual_sample.size() < 2)
    raise(errc::insufficient_sample,
          bowler + " with " + partner + ": needs at least 2 complete overs per sample");

  // Orient so that rejecting "greater" always means the pair improves the
  // bowler: for economy the individual sample conceding more is better
  // bowled with the partner; for hitrate the pair sample must take more.
  const auto mw = metric == Metric::Economy
                      ? mann_whitney(individual_sample, bowlership_sample, opts.exact_cutoff)
                      : mann_whitney(bowlership_sample, individual_sample, opts.exact_cutoff);

  std::optional<BowlershipEdge> edge;
  const bool two_sided_rejects = mw.p_two_sided < opts.alpha;
  if (two_sided_rejects && mw.p_greater < opts.alpha) {
    edge = BowlershipEdge{bowler, partner, metric, EdgeSign::Positive, mw, pair_overs_total};
  } else if (two_sided_rejects && mw.p_less < opts.alpha) {
    edge = BowlershipEdge{bowler, partner, metric, EdgeSign::Negative, mw, pair_overs_total};
  }
  return edge;
}

struct PairClassification {
  // per direction: a->b then b->a
  std::optional<BowlershipEdge> a_to_b;
  std::optional<BowlershipEdge> b_to_a;
};

inline PairClassification classify_pair(const BowlingPair& pair,
                                        const std::vector<OverRecord>& career_of_a,
                                        const std::vector<OverRecord>& career_of_b, Metric metric,
                                        const ClassifyOptions& opts) {
  PairClassification out;
  out.a_to_b = classify_direction(pair.a, pair.b, pair.overs_of_a, career_of_a, metric, opts,
                                  pair.pair_overs);
  out.b_to_a = classify_direction(pair.b, pair.a, pair.overs_of_b, career_of_b, metric, opts,
                                  pair.pair_overs);
  return out;
}

}  // namespace bowlership
