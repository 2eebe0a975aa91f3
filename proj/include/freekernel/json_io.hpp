#pragma once

#include <string>

#include <json.hpp>

#include "freekernel/invariant.hpp"
#include "freekernel/kmatrix.hpp"
#include "freekernel/schur.hpp"

namespace freekernel::json_io {

using nlohmann::json;

/// Kernel file: {"N": int|null, "labels": [int|[int...]...],
///               "re": [[...]], "im": [[...]]}.
json kernel_to_json(const kmatrix::KernelMatrix& K, std::optional<int> N);
kmatrix::KernelMatrix kernel_from_json(const json& j);
std::optional<int> kernel_alphabet(const json& j);

/// Parameter file: {"n": int, "gamma": [{"k","j","re","im"}...],
///                  "degenerate": [[k,j]...]}.
json params_to_json(const schur::SchurParameterTable& params);
schur::SchurParameterTable params_from_json(const json& j);

/// Moment file: {"c": [[re,im]...]}.
json moments_to_json(const invariant::ToeplitzMoments& m);
invariant::ToeplitzMoments moments_from_json(const json& j);

json word_to_json(const words::Word& w);
words::Word word_from_json(const json& j);

/// Strict "a+bi" complex literal; also accepts "a", "bi", "i", "-i".
kmatrix::cplx parse_complex(const std::string& text);
/// Comma-separated list of complex literals.
std::vector<kmatrix::cplx> parse_complex_list(const std::string& text);

/// Word from a JSON-style array string or a compact digit string ("121",
/// letters 1..9 only).
words::Word parse_word(const std::string& text);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace freekernel::json_io
