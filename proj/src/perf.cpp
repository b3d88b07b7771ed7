// Copyright 2026 The LRCoin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lrcoin/perf.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "lrcoin/lrsig.hpp"

namespace lrcoin::perf {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: x has no spread");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
  }
  f.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return (*mid + *std::max_element(v.begin(), mid)) / 2;
}

bilinear::BilinearParams build_params(bilinear::BackendId backend) {
  using bilinear::SecurityLevel;
  return backend == bilinear::BackendId::curve
             ? bilinear::BilinearParams::setup(SecurityLevel::standard, backend)
             : bilinear::BilinearParams::setup(SecurityLevel::toy, backend);
}

}  // namespace

SweepReport sign_verify_sweep(bilinear::BackendId backend, std::size_t max_messages,
                              std::size_t repetitions, std::uint64_t seed) {
  if (max_messages == 0) throw std::invalid_argument("sweep: message count must be >= 1");
  if (repetitions == 0) throw std::invalid_argument("sweep: repetitions must be >= 1");

  const ChaChaRng root(seed);
  SweepReport out;
  // samples[n-1] holds one vector per algorithm.
  struct Samples {
    std::vector<double> setup, keygen, sign, verify;
  };
  std::vector<Samples> samples(max_messages);
  double setup_sum = 0, keygen_sum = 0, sign_sum = 0, verify_sum = 0;
  std::size_t calls = 0, messages = 0;
  // Repetitions form the outer loop so a burst of machine noise lands on
  // different n values and the per-n median discards it.
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    for (std::size_t n = 1; n <= max_messages; ++n) {
      Samples& s = samples[n - 1];
      ChaChaRng rng = root.derive("sweep", n * 1'000'003 + rep);
      auto t0 = Clock::now();
      const auto params = build_params(backend);
      s.setup.push_back(ms_since(t0));

      t0 = Clock::now();
      lrsig::KeyPair kp = lrsig::keygen(params, rng);
      s.keygen.push_back(ms_since(t0));

      std::vector<Bytes> msgs;
      for (std::size_t i = 0; i < n; ++i) {
        const std::string m = "message " + std::to_string(i);
        msgs.emplace_back(m.begin(), m.end());
      }
      std::vector<lrsig::Signature> sigs;
      sigs.reserve(n);
      t0 = Clock::now();
      for (const auto& m : msgs) sigs.push_back(lrsig::sign(params, kp.sk, m, rng));
      s.sign.push_back(ms_since(t0));

      bool all_ok = true;
      t0 = Clock::now();
      for (std::size_t i = 0; i < n; ++i) all_ok = lrsig::verify(kp.pk, msgs[i], sigs[i]) && all_ok;
      s.verify.push_back(ms_since(t0));
      if (!all_ok) throw std::logic_error("sweep: honest signature failed to verify");

      setup_sum += s.setup.back();
      keygen_sum += s.keygen.back();
      sign_sum += s.sign.back();
      verify_sum += s.verify.back();
      calls += 1;
      messages += n;
    }
  }
  for (std::size_t n = 1; n <= max_messages; ++n) {
    const Samples& s = samples[n - 1];
    out.rows.push_back({n, median(s.setup), median(s.keygen), median(s.sign), median(s.verify)});
  }
  out.setup_mean_ms = setup_sum / static_cast<double>(calls);
  out.keygen_mean_ms = keygen_sum / static_cast<double>(calls);
  out.sign_mean_ms = sign_sum / static_cast<double>(messages);
  out.verify_mean_ms = verify_sum / static_cast<double>(messages);

  if (out.rows.size() >= 2) {
    std::vector<double> x, ys, yv;
    for (const auto& r : out.rows) {
      x.push_back(static_cast<double>(r.n));
      ys.push_back(r.sign_total_ms);
      yv.push_back(r.verify_total_ms);
    }
    out.sign_fit = fit_line(x, ys);
    out.verify_fit = fit_line(x, yv);
  }
  return out;
}

std::string sweep_csv(const SweepReport& r) {
  std::ostringstream out;
  out << "n,setup_ms,keygen_ms,sign_total_ms,verify_total_ms\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << row.setup_ms << ',' << row.keygen_ms << ',' << row.sign_total_ms << ','
        << row.verify_total_ms << '\n';
  }
  out << "# mean_ms setup=" << r.setup_mean_ms << " keygen=" << r.keygen_mean_ms
      << " sign=" << r.sign_mean_ms << " verify=" << r.verify_mean_ms << '\n';
  out << "# sign_fit slope_ms=" << r.sign_fit.slope << " r2=" << r.sign_fit.r2 << '\n';
  out << "# verify_fit slope_ms=" << r.verify_fit.slope << " r2=" << r.verify_fit.r2 << '\n';
  return out.str();
}

}  // namespace lrcoin::perf
