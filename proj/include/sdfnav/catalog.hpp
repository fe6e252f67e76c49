#pragma once

#include <map>
#include <memory>
#include <string>

#include "sdfnav/fields.hpp"
#include "sdfnav/shapes.hpp"

namespace sdfnav {

// Object catalog: the shape priors the pipeline can recognize and align.
class Catalog {
 public:
  void add(const ShapeSpec& spec);
  const ShapeSpec& get(int id) const;
  bool contains(int id) const { return shapes_.count(id) > 0; }
  std::size_t size() const { return shapes_.size(); }
  const std::map<int, ShapeSpec>& shapes() const { return shapes_; }

 private:
  std::map<int, ShapeSpec> shapes_;
};

// Text format, one shape per line: id kind dx dy dz [round_radius].
Catalog load_catalog(const std::string& path);
void save_catalog(const Catalog& catalog, const std::string& path);

// Built-in desk-scale household set.
Catalog default_catalog();

// Per-id normalized object fields (grid-baked unless analytic requested).
class FieldBank {
 public:
  FieldBank() = default;
  static FieldBank baked(const Catalog& catalog, int resolution);
  static FieldBank analytic(const Catalog& catalog);

  std::shared_ptr<const ObjectField> field(int id) const;

 private:
  std::map<int, std::shared_ptr<const ObjectField>> fields_;
};

}  // namespace sdfnav
