/// @file json_io.hpp
/// JSON encodings of matrices, groups, scalar functions, automorphisms,
/// sample maps and reports. Every reader throws FileFormat on malformed input.
///
/// Matrices: {"n": 3, "regime": "QR"|"QC"|"C64", "rows": [[...]]}, rationals
/// as "p/q" strings, complex entries as {"re": ..., "im": ...}. A matrix with
/// an irrational scale is {"scale": "3^(1/3)", "matrix": {...}}.
#pragma once

#include <nlohmann/json.hpp>
#include <string_view>

#include "locaut/gallery/gallery.hpp"
#include "locaut/local/local_check.hpp"
#include "locaut/recover/recover.hpp"
#include "locaut/scalar/classes.hpp"

namespace locaut::io {

using json = nlohmann::json;

json to_json(const Rational& q);
Rational rational_from_json(const json& j);

/// "-2^3*3^(1/2)", the format of SignedFactored::str().
SignedFactored parse_factored(std::string_view text);
json to_json(const SignedFactored& x);
SignedFactored factored_from_json(const json& j);

json to_json(const AnyMatrix& m);
AnyMatrix matrix_from_json(const json& j);
json to_json(const ScaledMatrix& m);
/// Accepts a plain matrix or the scaled form.
ScaledMatrix scaled_from_json(const json& j);

/// {"family": "SL", "field": "R", "n": 3}; readers also accept "sl-r-3".
json to_json(const GroupTag& g);
GroupTag group_from_json(const json& j);

json to_json(const RealLattice& l);
RealLattice real_lattice_from_json(const json& j);
json to_json(const CircleLattice& l);
CircleLattice circle_lattice_from_json(const json& j);

json to_json(const MulFunc& g);
MulFunc mulfunc_from_json(const json& j);

json to_json(const Automorphism& phi);
Automorphism automorphism_from_json(const json& j);

json to_json(const SampleMap& m);
SampleMap sample_map_from_json(const json& j);

json to_json(const ClassVerdict& v);
json to_json(const PairVerdict& v);
json to_json(const MapReport& r);
json to_json(const RecoveryReport& r);
json to_json(const Certificate& c);
json to_json(const GlGalleryItem& item);
json to_json(const AdditiveItem& item);
json to_json(const SignTwistItem& item);

/// {"error": "FileFormat", "detail": "..."}.
json error_json(const Error& e);

/// Parses text as JSON, mapping parse errors to FileFormat.
json parse(std::string_view text);

}  // namespace locaut::io
