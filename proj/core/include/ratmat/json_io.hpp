// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratmat/bounds.hpp"
#include "ratmat/experiment.hpp"
#include "ratmat/rom.hpp"
#include "ratmat/types.hpp"

namespace ratmat
{

using Json = nlohmann::json;

// Matrices: {"rows": r, "cols": c, "data": [[re, im], ...]} row-major;
// vectors use cols = 1. Schema violations throw Error("schema: ...").

Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);

Json points_to_json(const std::vector<Complex> &points);
std::vector<Complex> points_from_json(const Json &j);

Json matrix_to_json(const ComplexMatrix &M);
ComplexMatrix matrix_from_json(const Json &j);
ComplexVector vector_from_json(const Json &j);

/// {"kappa0": k, "chi0": c, "poles": [{"lambda": [re, im], "kappa": k, "chi": c}]}.
Json pole_spec_to_json(const PoleSpec &spec);
PoleSpec pole_spec_from_json(const Json &j);

/// {"e1": x, "argmax_s": s, "argmax_mu": [re, im], "grid": {"s": n_s, "mu": n_mu}}.
Json bound_result_to_json(const BoundResult &r);

/// Matrices of the model plus "spec", "side" and "reduced_spectrum".
Json reduced_model_to_json(const ReducedModel &m);

/// Unknown keys are rejected; absent keys keep their defaults. The rectangle
/// is {"re_min", "re_max", "im_min", "im_max"}; fit_degree is [L, M].
ExperimentConfig config_from_json(const Json &j);
Json config_to_json(const ExperimentConfig &cfg);

Json read_json_file(const std::filesystem::path &path);

/// Writes through a temporary file in the same directory and renames it.
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace ratmat
