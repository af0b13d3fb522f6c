#pragma once

#include <string>

#include "raylander/expfield.hpp"
#include "raylander/landing.hpp"
#include "raylander/rays.hpp"

namespace raylander {

// Wire formats. JSON numbers use shortest-round-trip formatting so every
// document re-parses to bit-identical values; CSV prints 15 significant
// digits.

std::string segment_to_json(const RaySegment& seg, const ExpMap& m);
std::string segment_to_csv(const RaySegment& seg);

/// Parses a segment document; the map it was traced with is returned
/// through `m`.
RaySegment segment_from_json(const std::string& text, ExpMap& m);

std::string certificate_to_json(const LandingCertificate& cert);
LandingCertificate certificate_from_json(const std::string& text);

std::string postsingular_to_json(const PostsingularData& data, const ExpMap& m);
std::string ladder_to_json(const PreimageLadder& ladder, const ExpMap& m, Complex z0);
std::string ladder_to_csv(const PreimageLadder& ladder);

} // namespace raylander
