#include "geotopics/geo.hpp"

#include <random>

#include "doctest.h"

using namespace geotopics;

namespace {

// Independent oracle: phrased as "outside on some axis" rather than the
// implementation's conjunction of inclusive comparisons.
bool oracle_contains_point(const GeoBox& box, const GeoPoint& p) {
  if (p.lat < box.sw.lat) return false;
  if (p.lat > box.ne.lat) return false;
  if (p.lon < box.sw.lon) return false;
  if (p.lon > box.ne.lon) return false;
  return true;
}

bool oracle_contains_box(const GeoBox& outer, const GeoBox& inner) {
  if (inner.sw.lat < outer.sw.lat) return false;
  if (inner.ne.lat > outer.ne.lat) return false;
  if (inner.sw.lon < outer.sw.lon) return false;
  if (inner.ne.lon > outer.ne.lon) return false;
  return true;
}

GeoBox random_box(std::mt19937& rng) {
  std::uniform_real_distribution<double> lat(-60.0, 60.0);
  std::uniform_real_distribution<double> lon(-120.0, 120.0);
  double a = lat(rng), b = lat(rng);
  double c = lon(rng), d = lon(rng);
  return GeoBox::make(std::min(a, b), std::min(c, d), std::max(a, b),
                      std::max(c, d));
}

GeoPoint random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> lat(-65.0, 65.0);
  std::uniform_real_distribution<double> lon(-130.0, 130.0);
  return {lat(rng), lon(rng)};
}

}  // namespace

TEST_CASE("contains_point boundary is inclusive") {
  const auto box = GeoBox::make(-23.0, -44.0, -22.0, -43.0);
  CHECK(contains_point(box, box.sw));
  CHECK(contains_point(box, box.ne));
  CHECK(contains_point(box, {-22.5, -43.5}));
  CHECK_FALSE(contains_point(box, {-21.9, -43.5}));  // north of the box
  CHECK_FALSE(contains_point(box, {-22.5, -42.9}));  // east of the box
}

TEST_CASE("contains_point agrees with oracle on 10000 random cases") {
  std::mt19937 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto box = random_box(rng);
    const auto p = random_point(rng);
    CHECK(contains_point(box, p) == oracle_contains_point(box, p));
  }
}

TEST_CASE("boxes_overlap basics") {
  const auto a = GeoBox::make(0, 0, 10, 10);
  CHECK(boxes_overlap(a, a));
  // touching edges count
  CHECK(boxes_overlap(a, GeoBox::make(10, 0, 20, 10)));
  // entirely north
  CHECK_FALSE(boxes_overlap(a, GeoBox::make(10.1, 0, 20, 10)));
}

TEST_CASE("boxes_overlap agrees with point-sampling oracle on a grid") {
  // Exhaustive 6x6 integer-grid box pairs; the oracle samples a fine grid
  // of points and asks whether any lies in both.
  std::vector<GeoBox> boxes;
  for (int lat0 = 0; lat0 < 6; ++lat0)
    for (int lat1 = lat0; lat1 < 6; ++lat1)
      for (int lon0 = 0; lon0 < 6; ++lon0)
        for (int lon1 = lon0; lon1 < 6; ++lon1)
          boxes.push_back(GeoBox::make(lat0, lon0, lat1, lon1));

  auto sampled_overlap = [](const GeoBox& a, const GeoBox& b) {
    for (double lat = 0; lat <= 5.0; lat += 0.5)
      for (double lon = 0; lon <= 5.0; lon += 0.5) {
        const GeoPoint p{lat, lon};
        if (oracle_contains_point(a, p) && oracle_contains_point(b, p))
          return true;
      }
    return false;
  };

  for (const auto& a : boxes)
    for (const auto& b : boxes) {
      CHECK(boxes_overlap(a, b) == sampled_overlap(a, b));
      CHECK(boxes_overlap(a, b) == boxes_overlap(b, a));
    }
}

TEST_CASE("box_contains_box") {
  const auto city = GeoBox::make(-23.08, -43.80, -22.74, -43.10);
  const auto country = GeoBox::make(-33.75, -73.99, 5.27, -34.79);
  CHECK(box_contains_box(city, city));
  // country-sized place box: overlaps the city but is not contained
  CHECK(boxes_overlap(country, city));
  CHECK_FALSE(box_contains_box(city, country));
  // one corner outside
  CHECK_FALSE(box_contains_box(city, GeoBox::make(-23.0, -43.70, -22.70, -43.20)));

  std::mt19937 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_box(rng);
    const auto b = random_box(rng);
    CHECK(box_contains_box(a, b) == oracle_contains_box(a, b));
    CHECK(box_contains_box(a, a));
  }
}

TEST_CASE("stream matching heuristic order") {
  const auto target = GeoBox::make(-23.08, -43.80, -22.74, -43.10);
  const auto country = GeoBox::make(-33.75, -73.99, 5.27, -34.79);
  const GeoPoint inside{-22.9, -43.2};

  // point inside wins even with a non-matching place box
  CHECK(match_geometry(inside, GeoBox::make(40, 0, 41, 1), target) ==
        MatchOutcome::ByCoordinates);
  // no point, overlapping country-sized place
  CHECK(match_geometry(std::nullopt, country, target) ==
        MatchOutcome::ByPlaceOverlap);
  CHECK(match_geometry(std::nullopt, std::nullopt, target) ==
        MatchOutcome::NoMatch);
  // place consulted only when the coordinates field is empty
  CHECK(match_geometry(GeoPoint{40.0, 0.0}, country, target) ==
        MatchOutcome::NoMatch);
}

TEST_CASE("strict filter") {
  const auto target = GeoBox::make(-23.08, -43.80, -22.74, -43.10);
  const auto country = GeoBox::make(-33.75, -73.99, 5.27, -34.79);
  CHECK(strict_city_match(GeoPoint{-22.9, -43.2}, std::nullopt, target));
  // overlap-only place box is the correction's whole point
  CHECK_FALSE(strict_city_match(std::nullopt, country, target));
  CHECK(strict_city_match(
      std::nullopt, GeoBox::make(-23.0, -43.5, -22.9, -43.4), target));
  // point outside overrides a contained place box
  CHECK_FALSE(strict_city_match(
      GeoPoint{0.0, 0.0}, GeoBox::make(-23.0, -43.5, -22.9, -43.4), target));
}

TEST_CASE("strict filter refines stream matching on random posts") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const auto target = random_box(rng);
    std::optional<GeoPoint> point;
    std::optional<GeoBox> place;
    if (coin(rng)) point = random_point(rng);
    if (coin(rng)) place = random_box(rng);
    if (strict_city_match(point, place, target))
      CHECK(match_geometry(point, place, target) != MatchOutcome::NoMatch);
  }
}

TEST_CASE("matching is monotone in the target box") {
  std::mt19937 rng(31);
  for (int i = 0; i < 2000; ++i) {
    const auto target = random_box(rng);
    const auto grown =
        GeoBox::make(std::max(-90.0, target.sw.lat - 1.0),
                     std::max(-180.0, target.sw.lon - 1.0),
                     std::min(90.0, target.ne.lat + 1.0),
                     std::min(180.0, target.ne.lon + 1.0));
    const auto p = random_point(rng);
    const auto b = random_box(rng);
    if (contains_point(target, p)) CHECK(contains_point(grown, p));
    if (boxes_overlap(target, b)) CHECK(boxes_overlap(grown, b));
  }
}

TEST_CASE("box construction rejects invalid input") {
  CHECK_THROWS_AS(GeoBox::make(10, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(GeoBox::make(0, 5, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(GeoBox::make(-95, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(GeoBox::make(0, -181, 5, 1), std::invalid_argument);
}
