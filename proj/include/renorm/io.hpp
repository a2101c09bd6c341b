#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "renorm/jarosz.hpp"
#include "renorm/matrix_group.hpp"
#include "renorm/norm.hpp"
#include "renorm/orbit_factory.hpp"
#include "renorm/pimple.hpp"

namespace renorm {

// ordered_json keeps insertion order, which makes report bytes reproducible
using json = nlohmann::ordered_json;

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);
json mat_to_json(const Mat& m);  // {"dim": n, "entries": row-major}
Mat mat_from_json(const json& j);

json norm_to_json(const Norm& n);
Norm norm_from_json(const json& j);

json group_to_json(const MatrixGroup& g);
std::shared_ptr<const MatrixGroup> group_from_json(const json& j);

// Validates closure of an explicit element list and builds the table.
MatrixGroup matrix_group_from_elements(const std::vector<Mat>& elements,
                                       double tol = 1e-9);

json table_to_json(const MultTable& t);
MultTable table_from_json(const json& j);

json pimple_spec_to_json(const PimpleSpec& s);
PimpleSpec pimple_spec_from_json(const json& j);

json family_to_json(const PointFamily& f);

struct RenderResult {
  std::string svg;
  std::string csv;  // header theta,radius
  std::vector<double> radii;
  std::vector<Vec> tips;
};

// Boundary points x/eval(x) over `resolution` angles; tips marked.
RenderResult render_ball_2d(const Norm& norm, int resolution);

std::string dump_report(const json& j);
void write_file(const std::string& path, const std::string& content);

}  // namespace renorm
