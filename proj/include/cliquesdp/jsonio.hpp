#pragma once

#include <json.hpp>

#include "cliquesdp/convert.hpp"
#include "cliquesdp/degeneracy.hpp"
#include "cliquesdp/graph.hpp"
#include "cliquesdp/ipm.hpp"
#include "cliquesdp/model.hpp"

namespace cliquesdp {

using json = nlohmann::json;

// All external JSON uses 1-based vertex, clique and constraint indices and
// row-major arrays for matrices.
json to_json(const SymMatrix& m);
json to_json(const SparsityGraph& g);
json to_json(const CliqueDecomposition& d);
json to_json(const DegeneracyReport& r);
json to_json(const Certificate& c);
json to_json(const KktReport& r);
json to_json(const MultiplierFamily& f);
json solve_summary(const IpmResult& r);

SymMatrix sym_from_json(const json& j);

}  // namespace cliquesdp
