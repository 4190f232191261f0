#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "bushdx/fuzzifier.hpp"

#ifndef BUSHDX_DATA_DIR
#error "BUSHDX_DATA_DIR must point at the repository data/ directory"
#endif

namespace fixtures {

// Bushing #200323106 as published.
inline bushdx::GasReading published_bushing() {
  bushdx::GasReading r;
  r.bushing_id = "200323106";
  r.h2 = 5782;
  r.ch4 = 240;
  r.c2h6 = 22;
  r.c2h4 = 2;
  r.c2h2 = 0;
  r.co = 44;
  r.co2 = 72;
  r.n2 = 4.58;
  r.o2 = 0.2535;
  return r;
}

inline bushdx::GasReading zero_reading(const std::string& id = "zero") {
  bushdx::GasReading r;
  r.bushing_id = id;
  return r;
}

inline std::string data_path(const std::string& rel) { return std::string(BUSHDX_DATA_DIR) + "/" + rel; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string reference_csv() { return read_text(data_path("fixtures/reference_bushings.csv")); }

}  // namespace fixtures
