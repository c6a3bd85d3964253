// Walks the core pipeline on one subject: parse a dataset, score it under
// the three choice models, recover the optimal preference relation, separate
// indifference from indecisiveness, and render the relation as a graph.
//
// The subject treats A and B as interchangeable tops, ranks both above C and
// D, and defers on {C, D} — the one menu where nothing dominates.  Dominant
// choice explains every row; the deferral is what tells indecisiveness
// (C vs D) apart from indifference (A vs B).

#include <iostream>

#include "prefrec/dataset.hpp"
#include "prefrec/graphviz.hpp"
#include "prefrec/models.hpp"
#include "prefrec/relation.hpp"
#include "prefrec/separation.hpp"

namespace {

const char* kCsv =
    "subject,menu,choice\n"
    "d1,A;B,A;B\n"
    "d1,A;C,A\n"
    "d1,B;C,B\n"
    "d1,A;D,A\n"
    "d1,B;D,B\n"
    "d1,C;D,\n"
    "d1,A;B;C,A;B\n"
    "d1,A;B;D,A;B\n"
    "d1,A;C;D,A\n"
    "d1,B;C;D,B\n"
    "d1,A;B;C;D,A;B\n";

}  // namespace

int main() {
  prefrec::ParsedData data = prefrec::parse_csv(kCsv, /*forced=*/false);
  const prefrec::Dataset& d = data.subjects.front();
  std::cout << "subject " << d.subject << ": " << d.observations.size()
            << " menus over " << data.labels.size() << " alternatives\n\n";

  // Distance score per model: menus the best admissible relation misses.
  prefrec::BestModelResult fit = prefrec::best_model(
      d, {prefrec::ModelKind::RationalChoice,
          prefrec::ModelKind::UndominatedChoice,
          prefrec::ModelKind::DominantChoice});
  for (const auto& [kind, res] : fit.by_model)
    std::cout << prefrec::to_string(kind) << "  score " << res.score
              << "  optimal relations " << res.optimal.size() << '\n';
  std::cout << "\nbest model: " << prefrec::to_string(fit.best) << '\n';

  const prefrec::Relation& r = fit.by_model.at(fit.best).optimal.front();
  std::cout << "recovered preference:\n"
            << prefrec::emit_relation_text(r, data.labels) << '\n';

  // Deferral patterns split the unranked pairs: chosen together = considered
  // equally good; deferred over = could not rank them.
  std::cout << "pair separation (dominant-choice criteria):\n";
  for (const prefrec::PairClassification& pc : prefrec::separate_dominant(d))
    std::cout << "  " << data.labels[pc.x] << " vs " << data.labels[pc.y]
              << ": " << prefrec::to_string(pc.status) << '\n';

  std::cout << '\n' << prefrec::to_dot(r, data.labels);
  return 0;
}
