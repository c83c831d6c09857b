#ifndef GEOTOPICS_GEO_HPP
#define GEOTOPICS_GEO_HPP

#include <optional>
#include <stdexcept>

namespace geotopics {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

inline bool valid_point(const GeoPoint& p) {
  return p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

// Axis-aligned lat/lon rectangle, SW and NE corners.
// Antimeridian-crossing boxes are rejected at construction.
struct GeoBox {
  GeoPoint sw;
  GeoPoint ne;

  static GeoBox make(double sw_lat, double sw_lon, double ne_lat, double ne_lon) {
    GeoBox b{{sw_lat, sw_lon}, {ne_lat, ne_lon}};
    if (!valid_point(b.sw) || !valid_point(b.ne))
      throw std::invalid_argument("GeoBox: coordinate out of range");
    if (b.sw.lat > b.ne.lat || b.sw.lon > b.ne.lon)
      throw std::invalid_argument("GeoBox: sw must be south-west of ne");
    return b;
  }
};

// Boundary inclusive on all four edges.
inline bool contains_point(const GeoBox& box, const GeoPoint& p) {
  return box.sw.lat <= p.lat && p.lat <= box.ne.lat &&
         box.sw.lon <= p.lon && p.lon <= box.ne.lon;
}

// True iff the rectangles share at least one point; touching edges count.
inline bool boxes_overlap(const GeoBox& a, const GeoBox& b) {
  return a.sw.lat <= b.ne.lat && b.sw.lat <= a.ne.lat &&
         a.sw.lon <= b.ne.lon && b.sw.lon <= a.ne.lon;
}

// True iff every point of inner lies in outer (corner comparisons suffice
// for axis-aligned boxes).
inline bool box_contains_box(const GeoBox& outer, const GeoBox& inner) {
  return contains_point(outer, inner.sw) && contains_point(outer, inner.ne);
}

enum class MatchOutcome { ByCoordinates, ByPlaceOverlap, NoMatch };

// The platform's streaming heuristics: precise coordinates are consulted
// first, the place box only when no point is present.
inline MatchOutcome match_geometry(const std::optional<GeoPoint>& point,
                                   const std::optional<GeoBox>& place_box,
                                   const GeoBox& target) {
  if (point) {
    if (contains_point(target, *point)) return MatchOutcome::ByCoordinates;
    return MatchOutcome::NoMatch;
  }
  if (place_box && boxes_overlap(*place_box, target))
    return MatchOutcome::ByPlaceOverlap;
  return MatchOutcome::NoMatch;
}

// Containment correction: a place box that merely overlaps the city box is
// rejected; it must lie entirely inside. A present point always wins over
// the place box.
inline bool strict_city_match(const std::optional<GeoPoint>& point,
                              const std::optional<GeoBox>& place_box,
                              const GeoBox& target) {
  if (point) return contains_point(target, *point);
  if (place_box) return box_contains_box(target, *place_box);
  return false;
}

}  // namespace geotopics

#endif
