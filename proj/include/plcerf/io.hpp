#ifndef PLCERF_IO_HPP
#define PLCERF_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "plcerf/cerf.hpp"
#include "plcerf/field.hpp"
#include "plcerf/mesh.hpp"
#include "plcerf/tvecc.hpp"

namespace plcerf {

// Deterministic shortest round-trip formatting for doubles.
std::string format_double(double x);

std::uint64_t fnv1a64_file(const std::filesystem::path& path);

// --- complexes -------------------------------------------------------------

// JSON schema: {"d": int, "vertex_count": int, "maximal_simplices": [[int,...],...]}
SimplicialComplex load_complex_json(const std::filesystem::path& path);
void save_complex_json(const SimplicialComplex& c, const std::filesystem::path& path);

// --- fields ----------------------------------------------------------------

// Raw interchange: little-endian float32 array of length V*T, time-major,
// with a JSON sidecar (same stem, .json extension) naming the grid:
// {"grid": [...], "periodic": [...], "timesteps": T, "t0": x, "dt": x}.
void save_field_raw(const TimeVaryingField& field, const std::filesystem::path& raw_path);
TimeVaryingField load_field_raw(const std::filesystem::path& raw_path);

// CSV with header vertex,t0,t1,...; values become uniform samples. The
// complex is supplied separately (grid or JSON import).
void save_field_csv(const TimeVaryingField& field, const std::filesystem::path& path);
TimeVaryingField load_field_csv(const std::filesystem::path& path,
                                std::shared_ptr<const SimplicialComplex> complex);

// Loads .raw (sidecar grid) or .csv (needs complex) by extension.
TimeVaryingField load_field_auto(const std::filesystem::path& path,
                                 std::shared_ptr<const SimplicialComplex> complex = nullptr);

// --- pipeline outputs -------------------------------------------------------

void save_arcs_csv(const CerfDiagram& diagram, int dim, const std::filesystem::path& path,
                   std::optional<int> index_filter = std::nullopt);
void save_crossings_csv(const CerfDiagram& diagram, const std::filesystem::path& path);
void save_tracking_graph_json(const TrackingGraph& g, const CerfDiagram& diagram,
                              const std::filesystem::path& path);
void save_tracks_csv(const std::vector<Track>& tracks, const CerfDiagram& diagram,
                     const TimeVaryingField& field, const std::filesystem::path& path,
                     const std::vector<int>* labels = nullptr);

// Surface sampled on its breakpoint grid: rows = s values, cols = sample times.
void save_surface_csv(const StepSurface& surface, const TimeVaryingField& field,
                      const std::filesystem::path& path);
void save_distance_matrix_csv(const DistanceMatrix& m, const std::filesystem::path& path);

// Atomic JSON write (temp file + rename).
void write_json_atomic(const std::string& body, const std::filesystem::path& path);

} // namespace plcerf

#endif
