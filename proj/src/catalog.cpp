#include "sdfnav/catalog.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdfnav {

void Catalog::add(const ShapeSpec& spec) {
  if (spec.dims.minCoeff() <= 0.0) {
    throw std::invalid_argument("catalog shape dimensions must be > 0");
  }
  shapes_[spec.id] = spec;
}

const ShapeSpec& Catalog::get(int id) const {
  auto it = shapes_.find(id);
  if (it == shapes_.end()) {
    throw std::out_of_range("catalog id " + std::to_string(id));
  }
  return it->second;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path);
  Catalog catalog;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    ShapeSpec spec;
    std::string kind;
    if (!(ls >> spec.id >> kind)) continue;  // blank/comment line
    ls >> spec.dims.x() >> spec.dims.y() >> spec.dims.z();
    if (!ls) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected id kind dx dy dz");
    }
    ls >> spec.round_radius;  // optional
    spec.kind = shape_kind_from_name(kind);
    catalog.add(spec);
  }
  return catalog;
}

void save_catalog(const Catalog& catalog, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write catalog " + path);
  out << "# id kind dx dy dz [round_radius]\n";
  for (const auto& [id, spec] : catalog.shapes()) {
    out << id << " " << shape_kind_name(spec.kind) << " " << spec.dims.x()
        << " " << spec.dims.y() << " " << spec.dims.z();
    if (spec.round_radius > 0.0) out << " " << spec.round_radius;
    out << "\n";
  }
}

Catalog default_catalog() {
  Catalog c;
  auto add = [&](int id, ShapeKind kind, double dx, double dy, double dz,
                 double r = 0.0) {
    ShapeSpec s;
    s.id = id;
    s.kind = kind;
    s.dims = Vec3(dx, dy, dz);
    s.round_radius = r;
    c.add(s);
  };
  add(0, ShapeKind::box, 0.40, 0.40, 0.45);            // crate
  add(1, ShapeKind::box, 0.60, 0.35, 0.50);            // storage bin
  add(2, ShapeKind::box, 0.25, 0.25, 0.60);            // tall carton
  add(3, ShapeKind::sphere, 0.35, 0.35, 0.35);         // ball
  add(4, ShapeKind::sphere, 0.22, 0.22, 0.22);
  add(5, ShapeKind::cylinder, 0.30, 0.30, 0.55);       // trash can
  add(6, ShapeKind::cylinder, 0.45, 0.45, 0.35);       // stool
  add(7, ShapeKind::rounded_box, 0.45, 0.35, 0.40, 0.06);  // ottoman
  add(8, ShapeKind::rounded_box, 0.30, 0.30, 0.35, 0.05);
  add(9, ShapeKind::box, 0.70, 0.30, 0.40);            // bench
  add(10, ShapeKind::cylinder, 0.25, 0.25, 0.70);      // lamp base
  add(11, ShapeKind::rounded_box, 0.55, 0.45, 0.30, 0.08);
  return c;
}

FieldBank FieldBank::baked(const Catalog& catalog, int resolution) {
  FieldBank bank;
  for (const auto& [id, spec] : catalog.shapes()) {
    bank.fields_[id] =
        std::make_shared<GridField>(bake_catalog_grid(spec, resolution));
  }
  return bank;
}

FieldBank FieldBank::analytic(const Catalog& catalog) {
  FieldBank bank;
  for (const auto& [id, spec] : catalog.shapes()) {
    bank.fields_[id] = std::make_shared<AnalyticShapeField>(spec);
  }
  return bank;
}

std::shared_ptr<const ObjectField> FieldBank::field(int id) const {
  auto it = fields_.find(id);
  if (it == fields_.end()) {
    throw std::out_of_range("no field for catalog id " + std::to_string(id));
  }
  return it->second;
}

}  // namespace sdfnav
