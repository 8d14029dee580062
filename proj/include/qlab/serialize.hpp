#pragma once

#include "qlab/decomp.hpp"
#include "qlab/rwt.hpp"

#include <json.hpp>

#include <string>

namespace qlab {

using Json = nlohmann::json;

/// Doubles serialize as strings with 17 significant digits so reports are
/// byte-stable across platforms; parsing accepts both strings and numbers.
std::string format_double(double x);
Json float_json(double x);
double float_from_json(const Json& j);

// Exact types: numerators as decimal-integer strings, scales as ints.
void to_json(Json& j, const DyadicRational& x);
void from_json(const Json& j, DyadicRational& x);
void to_json(Json& j, const ExactScalar& x);
void from_json(const Json& j, ExactScalar& x);
void to_json(Json& j, const DyadicInterval& I);
void from_json(const Json& j, DyadicInterval& I);
void to_json(Json& j, const Tile& t);
void from_json(const Json& j, Tile& t);
void to_json(Json& j, const Quartile& q);
void from_json(const Json& j, Quartile& q);
void to_json(Json& j, const Tree& t);
void from_json(const Json& j, Tree& t);
void to_json(Json& j, const QuartileCollection& c);
void from_json(const Json& j, QuartileCollection& c);
void to_json(Json& j, const StepFunction& f);
void from_json(const Json& j, StepFunction& f);
void to_json(Json& j, const Grid& g);
void from_json(const Json& j, Grid& g);

// Reports.
void to_json(Json& j, const SizeReport& r);
void to_json(Json& j, const DecompositionLevel& l);
void from_json(const Json& j, DecompositionLevel& l);
void to_json(Json& j, const DecompositionResult& r);
void from_json(const Json& j, DecompositionResult& r);
void to_json(Json& j, const HexagonRegion& h);
void to_json(Json& j, const Classification& c);
void to_json(Json& j, const RwtAboveReport& r);
void to_json(Json& j, const RwtBelowReport& r);
void to_json(Json& j, const DualityExampleRegion& r);

/// CSV ledger of Lambda terms: one row per quartile with exact pairings and
/// the exact term value.
std::string lambda_terms_csv(const std::vector<LambdaTerm>& terms);

}  // namespace qlab
