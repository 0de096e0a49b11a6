#pragma once

// JSON views of library results. Exact numbers are "num/den" (or decimal
// integer) strings; a float appears only next to its exact value or as an
// estimate with its half-width.

#include <json.hpp>

#include "edgestat/anticoncentration.hpp"
#include "edgestat/cover.hpp"
#include "edgestat/discrepancy.hpp"
#include "edgestat/edge_statistics.hpp"
#include "edgestat/hypergraph.hpp"
#include "edgestat/multilinear.hpp"
#include "edgestat/slice_coupling.hpp"

namespace edgestat {

using Json = nlohmann::ordered_json;

Json exact_json(const Rational& q);                  // "a/b"
Json exact_with_decimal(const Rational& q);          // {"exact": "a/b", "approx": 0.25}
Json set_json(const VertexSet& s);
Json edges_json(std::span<const Edge> edges);

Json to_json(const Hypergraph& g);
Json to_json(const EdgeProfile& p);
Json to_json(const PointEstimate& e);
Json to_json(const JuntaTable& t);
Json to_json(const Coupling& c);
Json to_json(const CoefficientTable& table);
Json to_json(const IdentityReport& r);
Json to_json(const BoundCheck& b);
Json to_json(const DiscrepancyReport& r);
Json to_json(const HeavySets& h);
Json to_json(const TVReport& r);
Json to_json(const PoissonReport& r);
Json to_json(const SliceMoments& m);
Json to_json(const ValueDistribution& d);
Json to_json(const CoverCertificate& c);
Json to_json(const CoverVerdict& v);

}  // namespace edgestat
