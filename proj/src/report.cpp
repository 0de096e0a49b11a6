#include "edgestat/report.hpp"

#include <bit>

namespace edgestat {

Json exact_json(const Rational& q) { return to_fraction_string(q); }

Json exact_with_decimal(const Rational& q) {
  return Json{{"exact", to_fraction_string(q)}, {"approx", q.get_d()}};
}

Json set_json(const VertexSet& s) {
  Json out = Json::array();
  for (Vertex v : s) out.push_back(v);
  return out;
}

Json edges_json(std::span<const Edge> edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(e);
  return out;
}

Json to_json(const Hypergraph& g) {
  const auto edges = g.edge_list();
  return Json{{"n", g.n()}, {"r", g.r()}, {"edge_count", g.edge_count()}, {"edges", edges_json(edges)}};
}

Json to_json(const EdgeProfile& p) {
  Json counts = Json::object();
  for (const auto& [level, count] : p.counts) counts[std::to_string(level)] = count.get_str();
  return Json{{"n", p.n}, {"k", p.k}, {"total", p.total.get_str()}, {"counts", counts}};
}

Json to_json(const PointEstimate& e) {
  return Json{{"estimate", exact_json(e.estimate)},
              {"estimate_approx", e.estimate.get_d()},
              {"half_width", e.half_width},
              {"hits", e.hits},
              {"samples", e.samples},
              {"seed", e.seed}};
}

Json to_json(const JuntaTable& t) {
  const auto members = t.y.members();
  Json entries = Json::array();
  for (std::size_t mask = 0; mask < t.values.size(); ++mask) {
    Json subset = Json::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
      if ((mask >> i) & 1U) subset.push_back(members[i]);
    }
    entries.push_back(Json{{"t", subset},
                           {"feasible", t.values[mask].has_value()},
                           {"value", t.values[mask] ? exact_json(*t.values[mask]) : Json(nullptr)},
                           {"probability", exact_json(t.subset_probability[mask])}});
  }
  return Json{{"y", set_json(t.y)}, {"n", t.n}, {"k", t.k}, {"entries", entries}};
}

Json to_json(const Coupling& c) {
  Json pairs = Json::array();
  for (const auto& [minus, plus] : c.pairs) pairs.push_back(Json::array({minus, plus}));
  return Json{{"n", c.n}, {"k", c.k}, {"pairs", pairs}, {"signs", c.signs}, {"chosen", set_json(c.chosen())}};
}

Json to_json(const CoefficientTable& table) {
  Json out = Json::array();
  for (const auto& [mask, a] : table) {
    Json index = Json::array();
    for (unsigned i = 0; i < 64; ++i) {
      if ((mask >> i) & 1U) index.push_back(i + 1);
    }
    out.push_back(Json{{"i", index}, {"a", exact_json(a)}});
  }
  return out;
}

Json to_json(const IdentityReport& r) {
  return Json{{"k", r.k},
              {"sign_vectors", r.sign_vectors},
              {"max_discrepancy", exact_json(r.max_discrepancy)},
              {"first_mismatch", r.first_mismatch ? Json(*r.first_mismatch) : Json(nullptr)},
              {"coefficients", to_json(r.table)}};
}

Json to_json(const BoundCheck& b) {
  return Json{{"checked", b.checked}, {"violations", b.violations}};
}

Json to_json(const DiscrepancyReport& r) {
  Json heaviest = Json::array();
  for (const auto& sw : r.heaviest) heaviest.push_back(Json{{"sequence", sw.sequence}, {"weight", sw.weight}});
  return Json{{"n", r.n},
              {"r", r.r},
              {"s", r.s},
              {"q", r.q.get_str()},
              {"normalized", exact_with_decimal(r.normalized())},
              {"sequences", r.sequences},
              {"max_weight", r.max_weight},
              {"weight_bound", r.weight_bound.get_str()},
              {"bound_violations", r.bound_violations},
              {"heaviest", heaviest}};
}

Json to_json(const HeavySets& h) {
  Json sets = Json::array();
  for (std::size_t i = 0; i < h.sets.size(); ++i) {
    sets.push_back(Json{{"i", set_json(h.sets[i])}, {"abs_a", exact_json(h.values[i])}});
  }
  return Json{{"t", h.t()}, {"sets", sets}, {"min_abs_a", exact_json(h.min_value)}};
}

Json to_json(const TVReport& r) {
  return Json{{"tv", exact_json(r.tv)},
              {"tv_approx", r.tv.get_d()},
              {"bound", exact_json(r.bound)},
              {"precondition_met", r.precondition_met},
              {"ok", r.ok()}};
}

Json to_json(const PoissonReport& r) {
  Json out{{"probability", exact_with_decimal(r.probability)},
           {"sharp_bound", exact_with_decimal(r.sharp_bound)},
           {"active_variables", r.active},
           {"precondition_met", r.precondition_met},
           {"ok", r.ok()}};
  if (r.below_e_gamma) out["below_e_plus_gamma"] = *r.below_e_gamma;
  return out;
}

Json to_json(const SliceMoments& m) {
  return Json{{"mean", exact_with_decimal(m.mean)}, {"variance", exact_with_decimal(m.variance)}};
}

Json to_json(const ValueDistribution& d) {
  Json atoms = Json::array();
  for (const auto& [value, prob] : d.atoms) {
    atoms.push_back(Json{{"value", exact_json(value)}, {"probability", exact_json(prob)}});
  }
  const auto [sup, at] = d.sup_point();
  return Json{{"atoms", atoms}, {"sup_point", exact_json(sup)}, {"sup_value", exact_json(at)}};
}

Json to_json(const CoverCertificate& c) {
  Json steps = Json::array();
  for (const auto& st : c.steps) {
    steps.push_back(Json{{"z", set_json(st.z)},
                         {"s", set_json(st.s)},
                         {"matching", edges_json(st.matching)},
                         {"w", set_json(st.w)},
                         {"relevant_before", st.counts_before},
                         {"relevant_after", st.counts_after}});
  }
  return Json{{"y", set_json(c.y)},
              {"terminated", c.terminated},
              {"step_cap_hit", c.step_cap_hit},
              {"step_cap", c.step_cap},
              {"steps", steps}};
}

Json to_json(const CoverVerdict& v) {
  Json out{{"passed", v.passed}};
  if (v.witness) {
    out["witness"] = Json{{"x", set_json(*v.witness)},
                          {"top_size", *v.witness_size},
                          {"matching_number", *v.witness_matching}};
  }
  if (v.uncovered_edge) out["uncovered_edge"] = *v.uncovered_edge;
  return out;
}

}  // namespace edgestat
