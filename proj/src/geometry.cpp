#include "nanopan/geometry.hpp"

#include <stdexcept>

namespace nanopan {

namespace {

bool interiors_overlap(const RegionBox& a, const RegionBox& b) {
  return a.rmin < b.rmax && b.rmin < a.rmax && a.zmin < b.zmax && b.zmin < a.zmax;
}

}  // namespace

RegionMap::RegionMap(std::vector<RegionBox> boxes, std::string background)
    : boxes_(std::move(boxes)), background_(std::move(background)) {
  for (const auto& b : boxes_) {
    if (!(b.rmin < b.rmax && b.zmin < b.zmax))
      throw std::invalid_argument("RegionMap: degenerate box '" + b.label + "'");
    if (b.rmin < 0.0)
      throw std::invalid_argument("RegionMap: box '" + b.label + "' extends to r < 0");
  }
  for (std::size_t i = 0; i < boxes_.size(); ++i)
    for (std::size_t j = i + 1; j < boxes_.size(); ++j)
      if (interiors_overlap(boxes_[i], boxes_[j]))
        throw std::invalid_argument("RegionMap: boxes '" + boxes_[i].label + "' and '" +
                                    boxes_[j].label + "' overlap");
}

const std::string& RegionMap::label_at(double r, double z) const {
  for (const auto& b : boxes_)
    if (b.contains(r, z)) return b.label;
  return background_;
}

void Geometry::validate() const {
  if (!(disk_diameter >= kDiskDiameterMin && disk_diameter <= kDiskDiameterMax))
    throw std::invalid_argument("Geometry: disk_diameter outside the [100 nm, 5 um] guard range");
  if (!(disk_thickness > 0.0))
    throw std::invalid_argument("Geometry: disk_thickness must be > 0");
  if (!(metal_thickness >= 0.0))
    throw std::invalid_argument("Geometry: metal_thickness must be >= 0");
  if (!(substrate_index >= 1.0))
    throw std::invalid_argument("Geometry: substrate_index must be >= 1");
}

Geometry nanopan_geometry(double disk_diameter, double disk_thickness,
                          double metal_thickness, double substrate_index,
                          const std::string& disk_label,
                          const std::string& metal_label,
                          const std::string& substrate_label,
                          const std::string& ambient_label) {
  Geometry g;
  g.disk_diameter = disk_diameter;
  g.disk_thickness = disk_thickness;
  g.metal_thickness = metal_thickness;
  g.substrate_index = substrate_index;

  const double a = 0.5 * disk_diameter;
  const double t = disk_thickness;
  const double mt = metal_thickness;

  std::vector<RegionBox> boxes;
  boxes.push_back({0.0, a, 0.0, t, disk_label});
  if (mt > 0.0) {
    // Pan bottom under the disk, and the blanket film beside it rising to
    // meet the substrate (covers the full sidewall whenever mt >= t).
    boxes.push_back({0.0, a, -mt, 0.0, metal_label});
    boxes.push_back({a, kRegionFar, t - mt, t, metal_label});
  }
  boxes.push_back({0.0, kRegionFar, t, kRegionFar, substrate_label});
  g.regions = RegionMap(std::move(boxes), ambient_label);
  g.validate();
  return g;
}

Geometry uniform_cylinder_geometry(double diameter, double height,
                                   const std::string& material_label) {
  Geometry g;
  g.disk_diameter = diameter;
  g.disk_thickness = height;
  g.metal_thickness = 0.0;
  g.substrate_index = 1.0;
  g.regions = RegionMap({}, material_label);
  g.validate();
  return g;
}

}  // namespace nanopan
