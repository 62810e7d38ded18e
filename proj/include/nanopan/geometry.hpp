#pragma once

#include <limits>
#include <string>
#include <vector>

#include "nanopan/materials.hpp"

namespace nanopan {

/// Axis-aligned (r, z) box carrying a material label. Half-open in spirit;
/// lookups test rmin <= r < rmax, zmin <= z < zmax.
struct RegionBox {
  double rmin = 0.0, rmax = 0.0;
  double zmin = 0.0, zmax = 0.0;
  std::string label;

  bool contains(double r, double z) const {
    return r >= rmin && r < rmax && z >= zmin && z < zmax;
  }
};

/// Disjoint boxes over a background label; together they tile the plane.
class RegionMap {
 public:
  RegionMap() = default;
  RegionMap(std::vector<RegionBox> boxes, std::string background);

  const std::string& label_at(double r, double z) const;
  const std::vector<RegionBox>& boxes() const { return boxes_; }
  const std::string& background() const { return background_; }

 private:
  std::vector<RegionBox> boxes_;
  std::string background_ = "vacuum";
};

/// The nanopan stack: a dielectric disk whose bottom and sidewall are clad in
/// metal, attached to a semi-infinite substrate above.
struct Geometry {
  double disk_diameter = 0.0;   // [m]
  double disk_thickness = 0.0;  // [m]
  double metal_thickness = 0.0; // [m]; 0 = bare dielectric cylinder
  double substrate_index = 1.0; // refractive index of the substrate half-space
  RegionMap regions;

  void validate() const;
};

inline constexpr double kDiskDiameterMin = 100e-9;
inline constexpr double kDiskDiameterMax = 5e-6;
inline constexpr double kRegionFar = 1.0;  // sentinel "infinite" extent [m]

/// Canonical nanopan region map. Coordinates: z = 0 at the disk bottom, the
/// disk occupies 0 <= z <= t; the substrate fills z >= t; metal fills the pan
/// under the disk and the blanket film beside it.
Geometry nanopan_geometry(double disk_diameter, double disk_thickness,
                          double metal_thickness, double substrate_index,
                          const std::string& disk_label,
                          const std::string& metal_label,
                          const std::string& substrate_label,
                          const std::string& ambient_label = "vacuum");

/// Uniform dielectric cylinder (validation fixture for the closed-box
/// analytic oracle): the disk label fills everything.
Geometry uniform_cylinder_geometry(double diameter, double height,
                                   const std::string& material_label);

}  // namespace nanopan
