#ifndef PLCERF_SVG_HPP
#define PLCERF_SVG_HPP

#include <filesystem>
#include <optional>

#include "plcerf/cerf.hpp"
#include "plcerf/field.hpp"
#include "plcerf/tvecc.hpp"

namespace plcerf {

// Cerf diagram: time on x, field value on y; arcs as polylines colored by
// critical index, crossings as markers.
void svg_cerf_diagram(const TimeVaryingField& field, const CerfDiagram& diagram,
                      const std::filesystem::path& path,
                      std::optional<int> index_filter = std::nullopt);

void svg_distance_heatmap(const DistanceMatrix& m, const std::filesystem::path& path);

// Tracks drawn over the scalar slice at slice_time (xy projection in 3D).
// labels, when given, pick the track color group (0 = before, 1 = after).
void svg_tracks_overlay(const TimeVaryingField& field, const CerfDiagram& diagram,
                        const std::vector<Track>& tracks, double slice_time,
                        const std::filesystem::path& path,
                        const std::vector<int>* labels = nullptr);

} // namespace plcerf

#endif
