#pragma once
// Grid-function files: a JSON document with header {n, N, L, T, M, dtype} and
// a base64 (little-endian float64) or CSV payload. M = 0 marks a static field;
// M >= 1 stores that many time slices, time-major.

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "paley/base64.hpp"
#include "paley/grid.hpp"

namespace paley {

using json = nlohmann::json;

namespace detail {

inline void append_f64(std::vector<std::uint8_t>& buf, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  for (int i = 0; i < 8; ++i) buf.push_back(std::uint8_t((bits >> (8 * i)) & 0xff));
}

inline double read_f64(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t(p[i]) << (8 * i);
  double x;
  std::memcpy(&x, &bits, sizeof x);
  return x;
}

inline json grid_header(const Grid& g, bool real, int time_samples, double T) {
  return json{{"n", g.dim}, {"N", g.n},          {"L", g.period},
              {"T", T},     {"M", time_samples}, {"dtype", real ? "real" : "complex"}};
}

inline void payload_from_samples(json& doc, const std::vector<const GridFunction*>& slices,
                                 bool real, const std::string& encoding) {
  if (encoding == "base64") {
    std::vector<std::uint8_t> buf;
    for (const auto* s : slices) {
      for (const auto& v : s->samples()) {
        append_f64(buf, v.real());
        if (!real) append_f64(buf, v.imag());
      }
    }
    doc["encoding"] = "base64";
    doc["data"] = b64::encode(buf.data(), buf.size());
  } else if (encoding == "csv") {
    std::ostringstream os;
    os.precision(17);
    for (const auto* s : slices) {
      for (const auto& v : s->samples()) {
        os << v.real();
        if (!real) os << "," << v.imag();
        os << "\n";
      }
    }
    doc["encoding"] = "csv";
    doc["data"] = os.str();
  } else {
    throw std::invalid_argument("grid file: encoding must be base64 or csv");
  }
}

inline std::vector<cplx> payload_to_samples(const json& doc, std::size_t count, bool real) {
  std::vector<cplx> out;
  out.reserve(count);
  const std::string encoding = doc.at("encoding").get<std::string>();
  if (encoding == "base64") {
    const auto buf = b64::decode(doc.at("data").get<std::string>());
    const std::size_t stride = real ? 8 : 16;
    if (buf.size() != count * stride) throw std::runtime_error("grid file: payload size mismatch");
    for (std::size_t i = 0; i < count; ++i) {
      const double re = read_f64(buf.data() + i * stride);
      const double im = real ? 0.0 : read_f64(buf.data() + i * stride + 8);
      out.push_back({re, im});
    }
  } else if (encoding == "csv") {
    std::istringstream is(doc.at("data").get<std::string>());
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto comma = line.find(',');
      const double re = std::stod(line.substr(0, comma));
      const double im =
          (!real && comma != std::string::npos) ? std::stod(line.substr(comma + 1)) : 0.0;
      out.push_back({re, im});
    }
    if (out.size() != count) throw std::runtime_error("grid file: payload row count mismatch");
  } else {
    throw std::runtime_error("grid file: unknown encoding " + encoding);
  }
  return out;
}

}  // namespace detail

inline void save_grid_function(const std::string& path, const GridFunction& u,
                               const std::string& encoding = "base64") {
  json doc{{"format", "paley-grid"}, {"version", 1}};
  doc["header"] = detail::grid_header(u.grid(), u.declared_real(), 0, 0.0);
  detail::payload_from_samples(doc, {&u}, u.declared_real(), encoding);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << doc.dump(1) << "\n";
}

inline void save_time_grid_function(const std::string& path, const TimeGridFunction& u,
                                    const std::string& encoding = "base64") {
  json doc{{"format", "paley-grid"}, {"version", 1}};
  const bool real = u.slice(0).declared_real();
  doc["header"] = detail::grid_header(u.grid(), real, u.time_samples(), u.axis().T);
  std::vector<const GridFunction*> slices;
  for (int i = 0; i < u.time_samples(); ++i) slices.push_back(&u.slice(i));
  detail::payload_from_samples(doc, slices, real, encoding);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << doc.dump(1) << "\n";
}

struct LoadedGridFile {
  Grid grid;
  bool real = false;
  int time_samples = 0;  // 0: static field
  double T = 0.0;
  std::vector<cplx> samples;  // time-major
};

inline LoadedGridFile load_grid_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  json doc = json::parse(is);
  if (doc.value("format", "") != "paley-grid") {
    throw std::runtime_error(path + ": not a paley-grid file");
  }
  const auto& h = doc.at("header");
  LoadedGridFile out;
  out.grid = Grid{h.at("n").get<int>(), h.at("N").get<int>(), h.at("L").get<double>()};
  out.grid.validate();
  out.real = h.at("dtype").get<std::string>() == "real";
  out.time_samples = h.at("M").get<int>();
  out.T = h.at("T").get<double>();
  const std::size_t per_slice = out.grid.size();
  const std::size_t total = per_slice * std::max(1, out.time_samples);
  out.samples = detail::payload_to_samples(doc, total, out.real);
  return out;
}

inline GridFunction load_grid_function(const std::string& path) {
  auto f = load_grid_file(path);
  if (f.time_samples > 1) throw std::runtime_error(path + ": expected a static field");
  return GridFunction::from_samples(f.grid, std::move(f.samples), f.real);
}

inline TimeGridFunction load_time_grid_function(const std::string& path) {
  auto f = load_grid_file(path);
  if (f.time_samples < 5) throw std::runtime_error(path + ": expected a time-dependent field");
  std::vector<GridFunction> slices;
  const std::size_t per = f.grid.size();
  for (int i = 0; i < f.time_samples; ++i) {
    std::vector<cplx> s(f.samples.begin() + i * per, f.samples.begin() + (i + 1) * per);
    slices.push_back(GridFunction::from_samples(f.grid, std::move(s), f.real));
  }
  return TimeGridFunction(TimeAxis{f.T, f.time_samples}, std::move(slices));
}

}  // namespace paley
