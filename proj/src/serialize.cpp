#include "lowreg/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lowreg {
namespace {

void expect_token(std::istream& is, const std::string& expected) {
  std::string tok;
  if (!(is >> tok) || tok != expected)
    throw std::runtime_error("parse error: expected '" + expected + "', got '" + tok + "'");
}

template <class T>
T read_value(std::istream& is, const char* what) {
  T value{};
  if (!(is >> value)) throw std::runtime_error(std::string("parse error: bad ") + what);
  return value;
}

std::string trajectory_header(const char* kind, std::size_t n, double t0, double dt,
                              const Provenance& meta) {
  std::ostringstream os;
  os << std::setprecision(17) << "lowreg-trajectory 1\n"
     << kind << ' ' << n << ' ' << t0 << ' ' << dt << ' '
     << (meta.scheme.empty() ? "-" : meta.scheme) << ' ' << meta.tau_ref << ' ' << meta.seed
     << '\n';
  return os.str();
}

struct Header {
  std::string kind;
  std::size_t samples;
  double t0, dt;
  Provenance meta;
};

Header read_header(std::istream& is) {
  expect_token(is, "lowreg-trajectory");
  expect_token(is, "1");
  Header h;
  h.kind = read_value<std::string>(is, "kind");
  h.samples = read_value<std::size_t>(is, "sample count");
  h.t0 = read_value<double>(is, "t0");
  h.dt = read_value<double>(is, "dt");
  h.meta.scheme = read_value<std::string>(is, "scheme");
  h.meta.tau_ref = read_value<double>(is, "tau_ref");
  h.meta.seed = read_value<std::uint64_t>(is, "seed");
  return h;
}

double read_time(std::istream& is) {
  expect_token(is, "time");
  return read_value<double>(is, "time");
}

template <class Traj>
void save(const std::filesystem::path& path, const Traj& traj) {
  std::ostringstream os;
  write_trajectory(os, traj);
  write_file_atomically(path, os.str());
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& f) {
  const auto flags = os.flags();
  const auto prec = os.precision(17);
  os << "lowreg-field 1\n" << f.n_modes() << ' ' << (f.is_real() ? 1 : 0) << '\n';
  for (const auto& c : f.coeffs()) os << c.real() << ' ' << c.imag() << '\n';
  os.precision(prec);
  os.flags(flags);
}

SpectralField read_field(std::istream& is) {
  expect_token(is, "lowreg-field");
  expect_token(is, "1");
  const int n = read_value<int>(is, "mode count");
  const int is_real = read_value<int>(is, "realness flag");
  TorusGrid grid(n);
  std::vector<cplx> c(n);
  for (auto& z : c) {
    const double re = read_value<double>(is, "coefficient");
    const double im = read_value<double>(is, "coefficient");
    z = {re, im};
  }
  return SpectralField(grid, std::move(c), is_real != 0);
}

void write_wave_state(std::ostream& os, const WaveState& w) {
  write_field(os, w.u);
  write_field(os, w.v);
}

WaveState read_wave_state(std::istream& is) {
  SpectralField u = read_field(is);
  SpectralField v = read_field(is);
  return WaveState(std::move(u), std::move(v));
}

void write_trajectory(std::ostream& os, const NlsTrajectory& traj) {
  os << trajectory_header("nls", traj.size(), traj.t0, traj.dt, traj.meta);
  const auto prec = os.precision(17);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << "time " << traj.time(i) << '\n';
    write_field(os, traj.states[i]);
  }
  os.precision(prec);
}

void write_trajectory(std::ostream& os, const WaveTrajectory& traj) {
  os << trajectory_header("wave", traj.size(), traj.t0, traj.dt, traj.meta);
  const auto prec = os.precision(17);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << "time " << traj.time(i) << '\n';
    write_wave_state(os, traj.states[i]);
  }
  os.precision(prec);
}

NlsTrajectory read_nls_trajectory(std::istream& is) {
  const Header h = read_header(is);
  if (h.kind != "nls") throw std::runtime_error("expected an nls trajectory, got " + h.kind);
  NlsTrajectory traj{h.t0, h.dt, {}, h.meta};
  for (std::size_t i = 0; i < h.samples; ++i) {
    read_time(is);
    traj.states.push_back(read_field(is));
  }
  return traj;
}

WaveTrajectory read_wave_trajectory(std::istream& is) {
  const Header h = read_header(is);
  if (h.kind != "wave") throw std::runtime_error("expected a wave trajectory, got " + h.kind);
  WaveTrajectory traj{h.t0, h.dt, {}, h.meta};
  for (std::size_t i = 0; i < h.samples; ++i) {
    read_time(is);
    traj.states.push_back(read_wave_state(is));
  }
  return traj;
}

void save_trajectory(const std::filesystem::path& path, const NlsTrajectory& traj) {
  save(path, traj);
}

void save_trajectory(const std::filesystem::path& path, const WaveTrajectory& traj) {
  save(path, traj);
}

NlsTrajectory load_nls_trajectory(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_nls_trajectory(in);
}

WaveTrajectory load_wave_trajectory(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_wave_trajectory(in);
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot write " + path.string());
  }
}

}  // namespace lowreg
