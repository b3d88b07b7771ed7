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

// lrcoin: command-line front end.
//
// Exit codes: 0 success or valid, 1 invalid input or failed verification,
// 2 usage or I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>

#include <nlohmann/json.hpp>

#include "lrcoin/chain.hpp"
#include "lrcoin/genericgroup.hpp"
#include "lrcoin/leakage.hpp"
#include "lrcoin/lrsig.hpp"
#include "lrcoin/market.hpp"
#include "lrcoin/perf.hpp"

namespace {

using namespace lrcoin;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

/// Usage or I/O problem; reported on stderr with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Write to a sibling temporary first so a crash never leaves a torn file.
void write_file(const fs::path& p, ByteView data) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw UsageError("cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

bilinear::BilinearParams params_for(const std::string& backend, std::optional<std::uint64_t> prime) {
  using bilinear::BackendId;
  using bilinear::SecurityLevel;
  try {
    if (backend == "curve") {
      if (prime) throw UsageError("--prime applies to the mock backend only");
      return bilinear::BilinearParams::setup(SecurityLevel::standard, BackendId::curve);
    }
    return bilinear::BilinearParams::setup(SecurityLevel::toy, BackendId::mock, std::nullopt,
                                           prime ? std::optional<mpz_class>(mpz_class(
                                                       static_cast<unsigned long>(*prime)))
                                                 : std::nullopt);
  } catch (const bilinear::UnsupportedParams& e) {
    throw UsageError(e.what());
  }
}

ChaChaRng rng_for(std::optional<std::uint64_t> seed, std::string_view label, std::uint64_t index) {
  return seed ? ChaChaRng(*seed).derive(label, index) : ChaChaRng::from_os();
}

struct KeygenOpts {
  std::string backend = "curve";
  std::optional<std::uint64_t> prime, seed;
  std::string pk, sk_active, sk_passive;
  bool export_secret = false;
};

int cmd_keygen(const KeygenOpts& o) {
  if (!o.export_secret)
    throw UsageError("keygen writes secret shares to disk; pass --export-secret to confirm");
  const auto params = params_for(o.backend, o.prime);
  ChaChaRng rng = rng_for(o.seed, "keygen", 0);
  lrsig::KeyPair kp = lrsig::keygen(params, rng);
  write_file(o.pk, kp.pk.encode());
  write_file(o.sk_active, lrsig::export_share(params, kp.sk.active));
  write_file(o.sk_passive, lrsig::export_share(params, kp.sk.passive));
  return kOk;
}

lrsig::PublicKey load_pk(const std::string& path) {
  try {
    return lrsig::PublicKey::decode(read_file(path));
  } catch (const DecodeError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct SignOpts {
  std::string pk, sk_active, sk_passive, msg, out;
  std::optional<std::uint64_t> seed;
};

int cmd_sign(const SignOpts& o) {
  const lrsig::PublicKey pk = load_pk(o.pk);
  lrsig::SecretState sk{lrsig::import_active_share(pk.params, read_file(o.sk_active)),
                        lrsig::import_passive_share(pk.params, read_file(o.sk_passive))};
  const Bytes msg = read_file(o.msg);
  ChaChaRng rng = rng_for(o.seed, "sign", sk.active.round);
  Bytes sig;
  try {
    sig = lrsig::sign(pk.params, sk, msg, rng).encode();
  } catch (const lrsig::RoundMismatch& e) {
    std::cerr << "error: secret shares are out of step (stale copy?): " << e.what() << '\n';
    return kInvalid;
  }
  write_file(o.out, sig);
  write_file(o.sk_active, lrsig::export_share(pk.params, sk.active));
  write_file(o.sk_passive, lrsig::export_share(pk.params, sk.passive));
  return kOk;
}

int cmd_verify(const std::string& pk_path, const std::string& msg_path, const std::string& sig_path) {
  const bool ok = lrsig::verify(load_pk(pk_path), read_file(msg_path), read_file(sig_path));
  std::cout << (ok ? "valid" : "invalid") << '\n';
  return ok ? kOk : kInvalid;
}

int cmd_chain_validate(const std::string& path, bool serial) {
  const Bytes file = read_file(path);
  nlohmann::ordered_json j;
  j["v"] = 1;
  j["file"] = path;
  chain::ValidationReport r;
  try {
    r = chain::validate_chain(chain::decode_chain_file(file), serial ? Exec::serial : Exec::parallel);
  } catch (const DecodeError& e) {
    r.error = std::string("decode: ") + e.what();
  }
  j["valid"] = r.valid;
  j["blocks"] = r.blocks;
  j["txs"] = r.txs;
  j["failed_height"] = r.failed_height ? nlohmann::ordered_json(*r.failed_height)
                                       : nlohmann::ordered_json(nullptr);
  j["error"] = r.error;
  std::cout << j.dump() << '\n';
  return r.valid ? kOk : kInvalid;
}

int cmd_market_run(const std::string& scenario, std::uint64_t seed, const std::string& out,
                   const std::string& backend) {
  const auto params = params_for(backend, std::nullopt);
  market::Report r;
  try {
    r = market::run_scenario_file(scenario, params, seed);
  } catch (const market::ScenarioError& e) {
    throw UsageError(scenario + ": " + e.what());
  }
  if (!out.empty()) write_file(out, r.chain_file);
  std::cout << market::report_json(r) << '\n';
  return r.all_valid && r.conserved ? kOk : kInvalid;
}

int cmd_leakgame(const std::string& variant, std::size_t lambda, std::uint64_t trials,
                 std::uint64_t seed, bool serial) {
  const auto v = variant == "naive" ? leakage::Variant::naive_monolithic
                                    : leakage::Variant::split_refresh;
  const auto r = leakage::run_attack(v, lambda, trials, seed, serial ? Exec::serial : Exec::parallel);
  std::cout << leakage::csv_header() << '\n' << leakage::csv_row(r) << '\n';
  return kOk;
}

int cmd_genericgroup(std::uint64_t p, std::uint64_t m, std::uint64_t trials, std::uint64_t seed,
                     const std::string& strategy, bool serial) {
  const auto s = strategy == "birthday" ? genericgroup::Strategy::adversarial_birthday
                                        : genericgroup::Strategy::random;
  genericgroup::ExperimentResult r;
  try {
    r = genericgroup::collision_experiment(p, m, trials, s, seed,
                                           serial ? Exec::serial : Exec::parallel);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << r.p << ',' << r.m << ',' << r.trials << ',' << r.empirical_rate << ',' << r.bound
            << '\n';
  return kOk;
}

int cmd_bench(std::size_t n, std::size_t reps, std::uint64_t seed, const std::string& backend) {
  if (n == 0) throw UsageError("--messages must be >= 1");
  if (reps == 0) throw UsageError("--repetitions must be >= 1");
  const auto id = backend == "curve" ? bilinear::BackendId::curve : bilinear::BackendId::mock;
  std::cout << perf::sweep_csv(perf::sign_verify_sweep(id, n, reps, seed));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LRCoin: leakage-resilient split-key signatures, chain and data market"};
  app.require_subcommand(1);
  const std::vector<std::string> backends{"mock", "curve"};

  KeygenOpts kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a key pair and its two secret shares");
  keygen->add_option("--backend", kg.backend, "mock or curve")->check(CLI::IsMember(backends));
  keygen->add_option("--prime", kg.prime, "Mock group order (toy primes only)");
  keygen->add_option("--seed", kg.seed, "Deterministic key generation");
  keygen->add_option("--pk", kg.pk, "Public key output")->required();
  keygen->add_option("--sk-active", kg.sk_active, "Active share output")->required();
  keygen->add_option("--sk-passive", kg.sk_passive, "Passive share output")->required();
  keygen->add_flag("--export-secret", kg.export_secret, "Confirm writing secret shares to disk");

  SignOpts so;
  auto* sign = app.add_subcommand("sign", "Sign a message file, advancing both shares one round");
  sign->add_option("--pk", so.pk)->required();
  sign->add_option("--sk-active", so.sk_active)->required();
  sign->add_option("--sk-passive", so.sk_passive)->required();
  sign->add_option("--msg", so.msg, "Message file")->required();
  sign->add_option("--out", so.out, "Signature output")->required();
  sign->add_option("--seed", so.seed, "Deterministic signing randomness (per round)");

  std::string v_pk, v_msg, v_sig;
  auto* verify = app.add_subcommand("verify", "Verify a signature file");
  verify->add_option("--pk", v_pk)->required();
  verify->add_option("--msg", v_msg)->required();
  verify->add_option("--sig", v_sig)->required();

  std::string chain_file;
  bool chain_serial = false;
  auto* chain_cmd = app.add_subcommand("chain", "Chain tools");
  chain_cmd->require_subcommand(1);
  auto* validate = chain_cmd->add_subcommand("validate", "Validate a chain file (JSON report)");
  validate->add_option("file", chain_file)->required();
  validate->add_flag("--serial", chain_serial, "Verify signatures on one thread");

  std::string scenario, market_out, market_backend = "curve";
  std::uint64_t market_seed = 0;
  auto* market_cmd = app.add_subcommand("market", "Market simulation");
  market_cmd->require_subcommand(1);
  auto* run = market_cmd->add_subcommand("run", "Run a scenario file (JSON report)");
  run->add_option("scenario", scenario)->required();
  run->add_option("--seed", market_seed)->required();
  run->add_option("--out", market_out, "Chain file output");
  run->add_option("--backend", market_backend)->check(CLI::IsMember(backends));

  std::string variant;
  std::size_t lambda = 0;
  std::uint64_t leak_trials = 100, leak_seed = 0;
  bool leak_serial = false;
  auto* leak = app.add_subcommand("leakgame", "Window-leakage attack experiment (CSV)");
  leak->add_option("--variant", variant)->required()->check(CLI::IsMember({"naive", "split"}));
  leak->add_option("--lambda", lambda, "Leaked bits per half-round")->required();
  leak->add_option("--trials", leak_trials)->check(CLI::PositiveNumber);
  leak->add_option("--seed", leak_seed);
  leak->add_flag("--serial", leak_serial);

  std::uint64_t gg_p = 0, gg_m = 0, gg_trials = 1000, gg_seed = 0;
  std::string gg_strategy = "random";
  bool gg_serial = false;
  auto* gg = app.add_subcommand("genericgroup", "Generic-group collision experiment (CSV line)");
  gg->add_option("--p", gg_p, "Prime group order")->required();
  gg->add_option("--queries", gg_m)->required();
  gg->add_option("--trials", gg_trials)->check(CLI::PositiveNumber);
  gg->add_option("--seed", gg_seed);
  gg->add_option("--strategy", gg_strategy)->check(CLI::IsMember({"random", "birthday"}));
  gg->add_flag("--serial", gg_serial);

  std::size_t bench_n = 10, bench_reps = 5;
  std::uint64_t bench_seed = 0;
  std::string bench_backend = "curve";
  auto* bench = app.add_subcommand("bench", "Time Setup/KeyGen/Sign/Verify for n = 1..N (CSV)");
  bench->add_option("--messages", bench_n, "Largest message count N");
  bench->add_option("--repetitions", bench_reps);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--backend", bench_backend)->check(CLI::IsMember(backends));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*keygen) return cmd_keygen(kg);
    if (*sign) return cmd_sign(so);
    if (*verify) return cmd_verify(v_pk, v_msg, v_sig);
    if (*validate) return cmd_chain_validate(chain_file, chain_serial);
    if (*run) return cmd_market_run(scenario, market_seed, market_out, market_backend);
    if (*leak) return cmd_leakgame(variant, lambda, leak_trials, leak_seed, leak_serial);
    if (*gg) return cmd_genericgroup(gg_p, gg_m, gg_trials, gg_seed, gg_strategy, gg_serial);
    if (*bench) return cmd_bench(bench_n, bench_reps, bench_seed, bench_backend);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DecodeError& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
