#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "heisgeom/gallery.hpp"
#include "heisgeom/gauss_bonnet.hpp"
#include "heisgeom/steiner.hpp"
#include "heisgeom/subriem.hpp"

namespace heis {

using Json = nlohmann::ordered_json;

/// Indented JSON with every floating value printed at 17 significant digits; non-finite values become null.
std::string dump_json(const Json& j);

/// {"schema": 1, "command": ...}
Json envelope(const std::string& command);

Json to_json(const HPoint& p);
Json to_json(const PointClass& c);
Json to_json(const CurvatureReport& r);
Json to_json(const GaussBonnetReport& r);
Json to_json(const SteinerReport& r);
Json to_json(const GIdentityReport& r);
Json to_json(const GalleryReport& r);
Json to_json(const FenchelReport& r);

/// Rows of scalar cells; strings are quoted when they contain separators.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<Json>>& rows);

}  // namespace heis
