#pragma once

// Plain-text records for fields, wave states and trajectories.
//
// Field record:
//   lowreg-field 1
//   <N> <is_real: 0|1>
//   <re> <im>            N lines, k = -N/2 .. N/2-1, 17 significant digits
//
// Wave state: two field records (u then v).
//
// Trajectory:
//   lowreg-trajectory 1
//   <kind: nls|wave> <samples> <t0> <dt> <scheme> <tau_ref> <seed>
//   then per sample a line "time <t>" followed by its field record(s).

#include <filesystem>
#include <iosfwd>

#include "lowreg/torus.hpp"
#include "lowreg/trajectory.hpp"

namespace lowreg {

void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);

void write_wave_state(std::ostream& os, const WaveState& w);
WaveState read_wave_state(std::istream& is);

void write_trajectory(std::ostream& os, const NlsTrajectory& traj);
void write_trajectory(std::ostream& os, const WaveTrajectory& traj);
NlsTrajectory read_nls_trajectory(std::istream& is);
WaveTrajectory read_wave_trajectory(std::istream& is);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe a partial file.
void save_trajectory(const std::filesystem::path& path, const NlsTrajectory& traj);
void save_trajectory(const std::filesystem::path& path, const WaveTrajectory& traj);
NlsTrajectory load_nls_trajectory(const std::filesystem::path& path);
WaveTrajectory load_wave_trajectory(const std::filesystem::path& path);

/// Atomic (temp + rename) text file write; throws std::runtime_error when the
/// target is not writable.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace lowreg
