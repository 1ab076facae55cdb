#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dff/extremality.hpp"
#include "dff/gdff.hpp"
#include "dff/maximality.hpp"
#include "dff/pwl.hpp"
#include "dff/search.hpp"

namespace dff {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPwlFormat = "dff-pwl-v1";
inline constexpr const char* kGdffFormat = "dff-gdff-v1";

Json to_json(const PwlFunction& f);
Json to_json(const GdffFunction& psi);
Json to_json(const Cover& c);
Json to_json(const MaximalityVerdict& v);
Json to_json(const ExtremalityVerdict& v);
Json to_json(const SearchReport& r);

PwlFunction pwl_from_json(const Json& j);
GdffFunction gdff_from_json(const Json& j);

// Compact serialization; files end with a newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

std::string read_text(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);

PwlFunction load_pwl(const std::filesystem::path& p);
void save_pwl(const std::filesystem::path& p, const PwlFunction& f);
GdffFunction load_gdff(const std::filesystem::path& p);
void save_gdff(const std::filesystem::path& p, const GdffFunction& psi);

}  // namespace dff
