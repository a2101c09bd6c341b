#include "renorm/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace renorm {

json vec_to_json(const Vec& v) { return json(v); }

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw spec_error("expected a number array");
  Vec v;
  for (const auto& e : j) v.push_back(e.get<double>());
  return v;
}

json mat_to_json(const Mat& m) {
  json j;
  j["dim"] = m.n;
  j["entries"] = m.a;
  return j;
}

Mat mat_from_json(const json& j) {
  if (j.is_array()) {
    // row-major square array
    std::vector<double> entries;
    for (const auto& e : j) entries.push_back(e.get<double>());
    int n = static_cast<int>(std::lround(std::sqrt(double(entries.size()))));
    if (n * n != static_cast<int>(entries.size()))
      throw spec_error("matrix entry count is not a perfect square");
    return Mat(n, std::move(entries));
  }
  int n = j.at("dim").get<int>();
  std::vector<double> entries;
  for (const auto& e : j.at("entries")) entries.push_back(e.get<double>());
  return Mat(n, std::move(entries));
}

json norm_to_json(const Norm& n) {
  json j;
  j["kind"] = n.kind();
  j["dim"] = n.dim();
  if (auto v = as_euclidean(n)) {
    j["gram"] = v->gram->a;
    return j;
  }
  if (auto v = as_weighted_lp(n)) {
    j["p"] = v->p;
    j["weights"] = *v->weights;
    return j;
  }
  if (auto v = as_day(n)) {
    j["weight_base"] = v->weight_base;
    return j;
  }
  if (auto v = as_max_seminorms(n)) {
    json arr = json::array();
    for (const auto& m : *v->seminorms) {
      json e;
      e["rows"] = m.rows;
      e["matrix"] = m.a;
      arr.push_back(std::move(e));
    }
    j["seminorms"] = std::move(arr);
    return j;
  }
  if (auto v = as_g_average(n)) {
    j["base"] = norm_to_json(v->base);
    j["group"] = group_to_json(*v->group);
    return j;
  }
  if (auto v = as_sum_squares(n)) {
    json arr = json::array();
    for (const Norm& p : *v->parts) arr.push_back(norm_to_json(p));
    j["parts"] = std::move(arr);
    return j;
  }
  if (auto v = as_block_l2(n)) {
    json arr = json::array();
    for (const auto& [off, nrm] : *v->blocks) {
      json e;
      e["offset"] = off;
      e["base"] = norm_to_json(nrm);
      arr.push_back(std::move(e));
    }
    j["blocks"] = std::move(arr);
    return j;
  }
  if (const PimpleSpec* s = as_pimple(n)) {
    j["spec"] = pimple_spec_to_json(*s);
    return j;
  }
  if (const C2NormSpec* s = as_c2_norm(n)) {
    json arr = json::array();
    for (const auto& l : s->lambdas) arr.push_back(json::array({l.real(), l.imag()}));
    j["lambdas"] = std::move(arr);
    return j;
  }
  if (const ExtensionWSpec* s = as_extension_w(n)) {
    json e;
    e["inner"] = norm_to_json(s->inner);
    e["secondary"] = norm_to_json(s->secondary);
    e["x0"] = s->x0;
    e["J"] = mat_to_json(s->J);
    e["p_scale"] = s->p_scale;
    e["x0_scale"] = s->x0_scale;
    j["spec"] = std::move(e);
    return j;
  }
  throw spec_error(std::string("norm kind is not serializable: ") + n.kind());
}

Norm norm_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int dim = j.at("dim").get<int>();
  if (kind == "euclidean") {
    if (j.contains("gram")) {
      std::vector<double> entries;
      for (const auto& e : j.at("gram")) entries.push_back(e.get<double>());
      return Norm::euclidean(Mat(dim, std::move(entries)));
    }
    return Norm::euclidean(dim);
  }
  if (kind == "weighted-lp") {
    double p = j.at("p").get<double>();
    Vec w = j.contains("weights") ? vec_from_json(j.at("weights"))
                                  : Vec(dim, 1.0);
    return Norm::weighted_lp(p, std::move(w));
  }
  if (kind == "day") {
    double base = j.value("weight_base", 0.25);
    return Norm::day(dim, base);
  }
  if (kind == "max-seminorms") {
    std::vector<RectMat> mats;
    for (const auto& e : j.at("seminorms")) {
      RectMat m;
      m.rows = e.at("rows").get<int>();
      m.cols = dim;
      for (const auto& x : e.at("matrix")) m.a.push_back(x.get<double>());
      if (static_cast<int>(m.a.size()) != m.rows * m.cols)
        throw spec_error("seminorm matrix size mismatch");
      mats.push_back(std::move(m));
    }
    return Norm::max_seminorms(dim, std::move(mats));
  }
  if (kind == "g-average")
    return Norm::g_average(norm_from_json(j.at("base")),
                           group_from_json(j.at("group")));
  if (kind == "sum-squares") {
    std::vector<Norm> parts;
    for (const auto& e : j.at("parts")) parts.push_back(norm_from_json(e));
    return Norm::sum_squares(std::move(parts));
  }
  if (kind == "block-l2") {
    std::vector<std::pair<int, Norm>> blocks;
    for (const auto& e : j.at("blocks"))
      blocks.emplace_back(e.at("offset").get<int>(),
                          norm_from_json(e.at("base")));
    return Norm::block_l2(dim, std::move(blocks));
  }
  if (kind == "pimple-hull")
    return pimple_norm(pimple_spec_from_json(j.at("spec")));
  if (kind == "c2") {
    C2NormSpec s;
    const auto& arr = j.at("lambdas");
    if (arr.size() != 4) throw spec_error("c2 norm needs 4 lambdas");
    for (int k = 0; k < 4; ++k)
      s.lambdas[k] = {arr[k][0].get<double>(), arr[k][1].get<double>()};
    return c2_norm_build(s);
  }
  if (kind == "extension-w") {
    const auto& e = j.at("spec");
    ExtensionWSpec s;
    s.inner = norm_from_json(e.at("inner"));
    s.secondary = norm_from_json(e.at("secondary"));
    s.x0 = vec_from_json(e.at("x0"));
    s.J = mat_from_json(e.at("J"));
    s.p_scale = e.at("p_scale").get<double>();
    s.x0_scale = e.at("x0_scale").get<double>();
    return extension_norm_w(s);
  }
  throw spec_error("unknown norm kind: " + kind);
}

json group_to_json(const MatrixGroup& g) {
  json j;
  j["dim"] = g.dim();
  json arr = json::array();
  for (const Mat& m : g.elements) arr.push_back(m.a);
  j["elements"] = std::move(arr);
  return j;
}

MatrixGroup matrix_group_from_elements(const std::vector<Mat>& elements,
                                       double tol) {
  if (elements.empty()) throw spec_error("group element list is empty");
  MatrixGroup g;
  try {
    g = group_closure(elements, static_cast<int>(elements.size()) + 1, tol);
  } catch (const solver_error&) {
    throw spec_error("group element set is not closed under products");
  }
  // closure always injects the identity; growth means the input was not closed
  size_t expected = elements.size();
  bool had_identity = false;
  Mat id = Mat::identity(elements[0].n);
  for (const Mat& m : elements)
    if (frobenius_dist(m, id) <= tol) had_identity = true;
  if (g.elements.size() != expected + (had_identity ? 0 : 1))
    throw spec_error("group element set is not closed under products");
  return g;
}

std::shared_ptr<const MatrixGroup> group_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<Mat> elems;
  for (const auto& e : j.at("elements")) {
    std::vector<double> entries;
    for (const auto& x : e) entries.push_back(x.get<double>());
    elems.push_back(Mat(dim, std::move(entries)));
  }
  return std::make_shared<MatrixGroup>(matrix_group_from_elements(elems));
}

json table_to_json(const MultTable& t) {
  json j;
  j["order"] = t.order;
  j["table"] = t.table;
  return j;
}

MultTable table_from_json(const json& j) {
  if (j.contains("preset")) return preset_table(j.at("preset").get<std::string>());
  int order = j.at("order").get<int>();
  std::vector<int> entries;
  for (const auto& e : j.at("table"))
    if (e.is_array())
      for (const auto& x : e) entries.push_back(x.get<int>());
    else
      entries.push_back(e.get<int>());
  return make_table(order, std::move(entries));
}

json pimple_spec_to_json(const PimpleSpec& s) {
  json j;
  j["base"] = norm_to_json(s.base);
  j["group"] = group_to_json(*s.group);
  json pts = json::array();
  for (const Vec& p : s.points) pts.push_back(p);
  j["points"] = std::move(pts);
  j["lambdas"] = s.lambdas;
  j["widths"] = s.widths;
  j["deltas"] = s.deltas;
  j["epsilons"] = s.epsilons;
  return j;
}

PimpleSpec pimple_spec_from_json(const json& j) {
  PimpleSpec s;
  s.base = norm_from_json(j.at("base"));
  s.group = group_from_json(j.at("group"));
  for (const auto& e : j.at("points")) s.points.push_back(vec_from_json(e));
  s.lambdas = vec_from_json(j.at("lambdas"));
  if (j.contains("widths")) s.widths = vec_from_json(j.at("widths"));
  if (j.contains("deltas")) s.deltas = vec_from_json(j.at("deltas"));
  if (j.contains("epsilons")) s.epsilons = vec_from_json(j.at("epsilons"));
  // optional blocks default to safe values so hand-written specs stay terse
  size_t K = s.points.size();
  if (s.widths.empty()) s.widths = Vec(K, 1.0);
  if (s.deltas.empty()) s.deltas = Vec(K, 0.5);
  if (s.epsilons.empty()) s.epsilons = Vec(K, 0.5);
  return s;
}

json family_to_json(const PointFamily& f) {
  json j;
  j["alpha"] = f.alpha;
  j["spans"] = f.spans;
  json pts = json::array();
  for (const auto& p : f.points) {
    json e;
    e["x"] = p.x;
    e["a"] = p.a;
    e["type"] = p.type;
    if (p.type == 1) e["source_basis"] = p.source_basis;
    if (p.type == 2) {
      e["source_g"] = p.source_g;
      e["beta"] = p.beta;
      e["kept_interval"] = json::array({p.interval_lo, p.interval_hi});
    }
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j;
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

RenderResult render_ball_2d(const Norm& norm, int resolution) {
  if (norm.dim() != 2) throw argument_error("render_ball_2d: dim must be 2");
  if (resolution < 64) throw argument_error("render_ball_2d: resolution >= 64");

  RenderResult out;
  out.tips = norm.structured_points();
  std::vector<Vec> boundary;
  double max_r = 0.0;
  for (int i = 0; i < resolution; ++i) {
    double th = 2.0 * M_PI * i / resolution;
    Vec u = {std::cos(th), std::sin(th)};
    double v = norm(u);
    double r = 1.0 / v;
    out.radii.push_back(r);
    boundary.push_back(r * u);
    max_r = std::max(max_r, r);
  }
  for (const Vec& t : out.tips) max_r = std::max(max_r, norm2(t));

  std::ostringstream csv;
  csv << "theta,radius\n";
  for (int i = 0; i < resolution; ++i)
    csv << fmt_double(2.0 * M_PI * i / resolution) << ","
        << fmt_double(out.radii[i]) << "\n";
  out.csv = csv.str();

  double scale = 180.0 / max_r;
  auto px = [&](double x) { return fmt_double(200.0 + scale * x); };
  auto py = [&](double y) { return fmt_double(200.0 - scale * y); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  svg << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  svg << "<path d=\"";
  for (int i = 0; i < resolution; ++i) {
    svg << (i == 0 ? "M" : "L") << px(boundary[i][0]) << " "
        << py(boundary[i][1]) << " ";
  }
  svg << "Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  for (const Vec& t : out.tips)
    svg << "<circle cx=\"" << px(t[0]) << "\" cy=\"" << py(t[1])
        << "\" r=\"4\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n";
  svg << "</svg>\n";
  out.svg = svg.str();
  return out;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw argument_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace renorm
