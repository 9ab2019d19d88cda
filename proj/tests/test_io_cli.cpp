#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "qord/dilation.hpp"
#include "qord/instrument.hpp"
#include "qord/io.hpp"
#include "qord/qubit.hpp"
#include "support/generators.hpp"

using namespace qord;
namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("qord_tests_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string save(const std::string& name, const Json& doc) {
  const fs::path p = work_dir() / name;
  write_text(p.string(), doc.dump(2) + "\n");
  return p.string();
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(QORD_CLI_PATH) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliRun r;
  char buf[4096];
  while (size_t n = std::fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("matrix JSON round trips are exact") {
  std::mt19937_64 rng(501);
  const CMatrix m = gen::ginibre(rng, 3, 2);
  const Json j = to_json(m);
  CHECK(frob_distance(cmatrix_from_json(j), m) == 0.0);
  // shortest-round-trip printing survives a text pass too
  CHECK(frob_distance(cmatrix_from_json(Json::parse(j.dump())), m) == 0.0);
}

TEST_CASE("device payload round trips") {
  std::mt19937_64 rng(503);
  const Observable a = gen::random_observable(rng, 3, 4);
  const Observable a2 = observable_from_json(to_json(a));
  REQUIRE(a2.effects.size() == a.effects.size());
  CHECK(approx_equal(a, a2, 0.0));

  const Channel c = gen::random_channel(rng, 2, 3, 2);
  const Channel c2 = channel_from_json(to_json(c));
  CHECK(c2.dim_in == 2);
  CHECK(c2.dim_out == 3);
  CHECK(choi_distance(c, c2) <= 1e-14);

  const Instrument instr = lueders(a);
  const Instrument i2 = instrument_from_json(to_json(instr));
  REQUIRE(i2.branches.size() == instr.branches.size());
  CHECK(choi_distance(total_channel(i2), total_channel(instr)) == 0.0);
}

TEST_CASE("device files carry an envelope and load back") {
  std::mt19937_64 rng(509);
  const Observable a = gen::random_observable(rng, 2, 3);
  const std::string path = save("obs.json", device_file("observable",
                                                        to_json(a)));
  const LoadedDevice dev = load_device(path);
  CHECK(dev.kind == "observable");
  CHECK(approx_equal(load_observable(path), a, 0.0));
}

TEST_CASE("loader failure modes all raise ParseError") {
  std::mt19937_64 rng(521);
  const Observable a = gen::random_observable(rng, 2, 2);
  const std::string obs_path = save("kind.json", device_file("observable",
                                                             to_json(a)));
  CHECK_THROWS_AS(load_channel(obs_path), ParseError);

  const fs::path bad = work_dir() / "bad.json";
  write_text(bad.string(), "{ this is not json\n");
  CHECK_THROWS_AS(load_device(bad.string()), ParseError);

  const std::string no_payload =
      save("nopayload.json", Json{{"kind", "observable"},
                                  {"schema_version", 1}});
  CHECK_THROWS_AS(load_device(no_payload), ParseError);

  const std::string future =
      save("future.json", Json{{"kind", "observable"},
                               {"schema_version", 99},
                               {"payload", to_json(a)}});
  CHECK_THROWS_AS(load_device(future), ParseError);

  CHECK_THROWS_AS(observable_from_json(Json{{"dim", 2}}), ParseError);
  CHECK_THROWS_AS(load_device((work_dir() / "absent.json").string()),
                  ParseError);
}

TEST_CASE("cli: validate accepts good devices and flags broken ones") {
  std::mt19937_64 rng(523);
  const std::string good = save(
      "cli_obs.json",
      device_file("observable", to_json(gen::random_observable(rng, 2, 3))));
  const CliRun ok = run_cli("validate '" + good + "'");
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out).at("status") == "ok");

  Observable broken{2, {0.5 * cidentity(2)}};
  const std::string bad = save("cli_bad_obs.json",
                               device_file("observable", to_json(broken)));
  const CliRun rej = run_cli("validate '" + bad + "'");
  CHECK(rej.code == 1);
  const Json rep = Json::parse(rej.out);
  CHECK(rep.at("status") == "invalid");
  CHECK(!rep.at("violations").empty());
}

TEST_CASE("cli: observable order returns a witness or exit 1") {
  std::mt19937_64 rng(541);
  const Observable b = gen::random_observable(rng, 2, 3);
  const std::string pb = save("cli_b.json",
                              device_file("observable", to_json(b)));
  const std::string pcoin =
      save("cli_coin.json",
           device_file("observable", to_json(coin_toss({0.4, 0.6}, 2))));
  const CliRun below = run_cli("order obs '" + pcoin + "' '" + pb + "'");
  CHECK(below.code == 0);
  const Json rep = Json::parse(below.out);
  CHECK(rep.at("status") == "feasible");
  CHECK(rep.contains("witness"));

  const CliRun above = run_cli("order obs '" + pb + "' '" + pcoin + "'");
  CHECK(above.code == 1);
  CHECK(Json::parse(above.out).at("status") == "infeasible");
}

TEST_CASE("cli: a sharp measurement channel is incompatible with identity") {
  const std::string pz =
      save("cli_z.json",
           device_file("observable", to_json(sharp_from_basis(cidentity(2)))));
  const std::string pid =
      save("cli_id.json", device_file("channel",
                                      to_json(identity_channel(2))));
  const CliRun r = run_cli("compatible '" + pid + "' '" + pz + "'");
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out).at("status") == "infeasible");
}

TEST_CASE("cli: degrade writes a verifiable channel") {
  const Observable a = qubit_observable(Vector3(0.0, 0.0, 0.6));
  const std::string pi =
      save("cli_instr.json", device_file("instrument", to_json(lueders(a))));
  const std::string out = (work_dir() / "cli_eps.json").string();
  const CliRun r = run_cli("degrade '" + pi + "' -o '" + out + "'");
  REQUIRE(r.code == 0);
  const Json rep = Json::parse(r.out);
  CHECK(rep.at("residual").get<double>() <= 1e-8);
  const Channel eps = load_channel(out);
  CHECK(validate_channel(eps).ok());
  CHECK(static_cast<size_t>(rep.at("kraus_count").get<long>()) ==
        eps.kraus.size());
}

TEST_CASE("cli: least-disturbing writes the channel and its dilation") {
  const Observable a = qubit_observable(Vector3(0.6, 0.0, 0.0));
  const std::string pa =
      save("cli_av.json", device_file("observable", to_json(a)));
  const std::string out = (work_dir() / "cli_la.json").string();
  const std::string dil = (work_dir() / "cli_dil.json").string();
  const CliRun r = run_cli("least-disturbing '" + pa + "' -o '" + out +
                           "' --dilation '" + dil + "'");
  REQUIRE(r.code == 0);
  const Channel written = load_channel(out);
  CHECK(choi_distance(written, least_disturbing_channel(a)) <= 1e-14);

  std::ifstream in(dil);
  REQUIRE(in.good());
  const Json jd = Json::parse(in);
  CHECK(jd.at("dilation_dim").get<Index>() == 4);
  const CMatrix v = cmatrix_from_json(jd.at("isometry"));
  CHECK(frob_distance(v.adjoint() * v, cidentity(2)) <= 1e-12);
}

TEST_CASE("cli: channel order goes through the same front end") {
  std::mt19937_64 rng(547);
  const Channel lam = gen::random_channel(rng, 2, 2, 2);
  const Channel bottom = trash_and_prepare(gen::random_state(rng, 2), 2);
  const std::string pl =
      save("cli_lam.json", device_file("channel", to_json(lam)));
  const std::string pb =
      save("cli_bot.json", device_file("channel", to_json(bottom)));

  const CliRun below = run_cli("order chan '" + pb + "' '" + pl + "'");
  CHECK(below.code == 0);
  const Json rep = Json::parse(below.out);
  CHECK(rep.at("status") == "feasible");
  const Channel wit = channel_from_json(rep.at("witness"));
  CHECK(choi_distance(compose(wit, lam), bottom) <= 1e-6);

  CHECK(run_cli("order chan '" + pl + "' '" + pb + "'").code == 1);
}

TEST_CASE("cli: mismatched dimensions are an input error") {
  const std::string pid3 =
      save("cli_id3.json", device_file("channel",
                                       to_json(identity_channel(3))));
  const std::string pz2 =
      save("cli_z3.json",
           device_file("observable", to_json(sharp_from_basis(cidentity(2)))));
  const CliRun r = run_cli("compatible '" + pid3 + "' '" + pz2 + "'");
  CHECK(r.code == 3);
  CHECK(Json::parse(r.out).at("status") == "error");
}

TEST_CASE("cli: disturbance bound of a projective measurement") {
  const std::string pz =
      save("cli_z2.json",
           device_file("observable", to_json(sharp_from_basis(cidentity(2)))));
  const CliRun r = run_cli("bound '" + pz + "'");
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out).at("bound").get<double>() ==
        doctest::Approx(1.0 / 16.0));
}

TEST_CASE("cli: qubit weight solves or reports no solution") {
  const CliRun ok = run_cli("qubit weight --lambda 0.9 --mu 0.7");
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out).at("lambda_prime").get<double>() ==
        doctest::Approx(0.75));

  const CliRun none = run_cli("qubit weight --lambda 0.7 --mu 0.9");
  CHECK(none.code == 1);
  CHECK(Json::parse(none.out).at("status") == "no_solution");
}

TEST_CASE("cli: usage and input errors exit 3") {
  CHECK(run_cli("no-such-command").code == 3);
  CHECK(run_cli("order obs only_one_path.json").code == 3);
  CHECK(run_cli("validate /nonexistent/file.json").code == 3);
}
