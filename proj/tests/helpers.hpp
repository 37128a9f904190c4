#pragma once

#include <initializer_list>
#include <vector>

#include "adlv/context.hpp"
#include "adlv/semimodule.hpp"

namespace testing_support {

inline adlv::IsocrystalContext ctx(int n, int d, int m, int q = 2) { return adlv::IsocrystalContext::derive(n, d, m, q); }

/// Semi-module with d = 1 from its list of coset minima.
inline adlv::SemiModule line(const adlv::IsocrystalContext& c, std::initializer_list<int64_t> mins) {
  std::vector<adlv::OPoint> pts;
  for (int64_t i : mins) pts.push_back({0, i});
  return adlv::SemiModule::validate(c, pts);
}

inline adlv::SemiModule points(const adlv::IsocrystalContext& c, std::vector<adlv::OPoint> pts) {
  return adlv::SemiModule::validate(c, pts);
}

inline std::vector<int64_t> values(const std::vector<adlv::OPoint>& pts) {
  std::vector<int64_t> out;
  for (const auto& p : pts) out.push_back(p.i);
  return out;
}

}  // namespace testing_support
