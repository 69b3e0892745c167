#pragma once

#include <string>

#include <json.hpp>

#include "dgpa/construct.hpp"
#include "dgpa/theorems.hpp"

namespace dgpa {

/// JSON presentation of an algebra, Lie algebra, or deformation, with an
/// optional module section. Scalars are exact strings ("2/3", "4 mod 7"),
/// never decimals; sparse tables omit zeros in total tables and list
/// undefined cells explicitly for partial ones.
struct ParsedPresentation {
    enum class Kind { algebra, lie, deformation };
    Kind kind = Kind::algebra;
    Field field = Field::rationals();
    std::optional<DGPoissonData> algebra;
    std::optional<DGPoissonModuleData> module;
    std::optional<DGLieData> lie;
    std::optional<DeformationData> deformation;
};

/// Parses and validates; throws parse_error with a located diagnostic
/// (line for syntax errors, field path for semantic ones).
ParsedPresentation parse_presentation(const std::string& text, const std::string& source);
ParsedPresentation load_presentation(const std::string& path);

std::string serialize_algebra(const DGPoissonData& a,
                              const DGPoissonModuleData* module = nullptr);
std::string serialize_lie(const DGLieData& l);
std::string serialize_deformation(const DeformationData& d);

/// Truncation persistence: words, degrees, sparse tables with exact scalars,
/// provenance and the stability verdict; reloadable without recomputation.
std::string serialize_truncation(const UETruncation& t);
UETruncation parse_truncation(const std::string& text, const std::string& source);

// machine-readable report documents (wrapped by the CLI with a schema header)
nlohmann::json report_json(const VerificationReport& rep);
nlohmann::json certificate_json(const IsoCertificate& cert);
nlohmann::json comparison_json(const OracleComparison& cmp);
nlohmann::json dims_json(const std::map<std::pair<std::uint32_t, long long>, std::size_t>& dims);

} // namespace dgpa
