// locaut: command-line front end. Every subcommand prints one JSON report on
// stdout. Exit 0 means a verdict was computed (refutations included); errors
// print {"error", "detail"} and exit 2 (BadArgs), 3 (FileFormat) or 1.
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "common.hpp"
#include "locaut/autos/generate.hpp"
#include "locaut/gallery/gallery.hpp"
#include "locaut/recover/recover.hpp"
#include "locaut/selftest.hpp"
#include "report.hpp"
#include "subprocess_oracle.hpp"

using namespace locaut;
using io::json;

namespace {

int exit_code(ErrorCode c) {
  if (c == ErrorCode::BadArgs) return 2;
  if (c == ErrorCode::FileFormat) return 3;
  return 1;
}

Kind parse_kind(const std::string& s) {
  if (s == "std") return Kind::Standard;
  if (s == "contra") return Kind::Contragredient;
  throw Error(ErrorCode::BadArgs, "--kind must be std or contra");
}

Sigma parse_sigma(const std::string& s) {
  if (s == "id") return Sigma::Id;
  if (s == "conj") return Sigma::Conj;
  throw Error(ErrorCode::BadArgs, "--sigma must be id or conj");
}

GroupTag parse_group(const std::string& s) {
  try {
    return GroupTag::parse(s);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadArgs, "--group: " + e.detail());
  }
}

// A matrix file holds one matrix, an array of them, or {"matrices": [...]}.
std::vector<AnyMatrix> read_matrices(const json& j) {
  const json& list = j.is_object() && j.contains("matrices") ? j["matrices"] : j;
  std::vector<AnyMatrix> out;
  if (list.is_array()) {
    for (const auto& m : list) out.push_back(io::matrix_from_json(m));
  } else {
    out.push_back(io::matrix_from_json(list));
  }
  return out;
}

// {±2^a 3^b : |a|, |b| <= 2}
std::vector<Rational> default_dets() {
  std::vector<Rational> dets;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      Rational d = pow(Rational(2), a) * pow(Rational(3), b);
      dets.push_back(d);
      dets.push_back(-d);
    }
  return dets;
}

std::string default_method(const GroupTag& g) {
  switch (g.family) {
    case Family::SL: return g.field == Field::R ? "short" : "common";
    case Family::GL:
      if (g.field == Field::R) return "gl";
      break;
    case Family::SUn: return "su";
    case Family::Un: return "u";
    default: break;
  }
  throw Error(ErrorCode::BadArgs, "no recovery engine for " + g.str());
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automorphisms and local automorphisms of GL_n, SL_n, U_n and SU_n"};
  app.require_subcommand(1);
  app.fallthrough();
  cli::RunSettings rs;
  app.add_option("--seed", rs.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", rs.tol, "Tolerance for floating-point comparisons")->capture_default_str();
  app.add_option("--budget", rs.budget, "Oracle query budget (0 = 10 n^2 + 200)")->capture_default_str();

  // gen-auto
  auto* gen = app.add_subcommand("gen-auto", "Random automorphism in canonical form");
  std::string gen_group, gen_kind = "std", gen_sigma = "id";
  bool gen_numeric = false;
  gen->add_option("--group", gen_group, "Group, e.g. sl-r-3, gl-c-4, u-3")->required();
  gen->add_option("--kind", gen_kind, "std or contra")->capture_default_str();
  gen->add_option("--sigma", gen_sigma, "id or conj")->capture_default_str();
  gen->add_flag("--numeric", gen_numeric, "Floating-point unitary T (unitary groups)");

  // apply
  auto* apply = app.add_subcommand("apply", "Images of matrices under an automorphism");
  std::string apply_auto, apply_mats;
  bool apply_samples = false;
  apply->add_option("automorphism", apply_auto, "Automorphism JSON")->required();
  apply->add_option("matrices", apply_mats, "Matrix JSON: one matrix or an array")->required();
  apply->add_flag("--samples", apply_samples, "Emit the result as a sample map");

  // verify-auto
  auto* verify = app.add_subcommand("verify-auto", "Check phi(AB) = phi(A) phi(B) on random pairs");
  std::string verify_auto;
  std::size_t verify_pairs = 200;
  verify->add_option("automorphism", verify_auto, "Automorphism JSON")->required();
  verify->add_option("--pairs", verify_pairs, "Random pairs")->capture_default_str();

  // local-check
  auto* local = app.add_subcommand("local-check", "Pairwise interpolation check of a sample map");
  std::string local_file;
  unsigned local_threads = 1;
  local->add_option("samples", local_file, "Sample map JSON")->required();
  local->add_option("--threads", local_threads, "Worker threads for pair checks")->capture_default_str();

  // recover
  auto* rec = app.add_subcommand("recover", "Recover the automorphism behind an oracle");
  std::string rec_group, rec_samples, rec_cmd, rec_method, rec_lattice;
  std::vector<std::string> rec_dets;
  rec->add_option("--group", rec_group, "Group of the oracle (defaults to the sample map's)");
  auto* src_samples = rec->add_option("--samples", rec_samples, "Sample map JSON answering the queries");
  auto* src_cmd = rec->add_option("--oracle-cmd", rec_cmd, "Command answering one matrix JSON per line");
  src_samples->excludes(src_cmd);
  rec->add_option("--method", rec_method, "short, common, gl, su or u (default by group)");
  rec->add_option("--dets", rec_dets, "Determinants for gl (rationals)");
  rec->add_option("--lattice", rec_lattice, "Circle lattice JSON for u");

  // gallery
  auto* gal = app.add_subcommand("gallery", "Certified examples");
  std::string gal_name;
  std::size_t gal_n = 3, gal_k = 2;
  bool gal_det_one = false, gal_odd_sign = false;
  std::string gal_p = "2", gal_q = "3";
  gal->add_option("item", gal_name, "gl-local-not-global, additive-r or sign-twist")
      ->required()
      ->check(CLI::IsMember({"gl-local-not-global", "additive-r", "sign-twist"}));
  gal->add_option("--n", gal_n, "Matrix size")->capture_default_str();
  gal->add_option("--k", gal_k, "Generators (additive-r)")->capture_default_str();
  gal->add_option("--p", gal_p, "First lattice generator")->capture_default_str();
  gal->add_option("--q", gal_q, "Second lattice generator")->capture_default_str();
  gal->add_flag("--det-one", gal_det_one, "Only determinant-one samples");
  gal->add_flag("--odd-sign", gal_odd_sign, "f(-x) = -f(x) on negatives (n even)");

  // selftest
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  std::vector<int> self_only;
  self->add_option("--only", self_only, "Criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(io::error_json(Error(ErrorCode::BadArgs, e.what())));
    return 2;
  }

  try {
    if (*gen) {
      cli::Report rep("gen-auto", rs);
      const GroupTag g = parse_group(gen_group);
      rep.inputs() = {{"group", io::to_json(g)}, {"kind", gen_kind}, {"sigma", gen_sigma}, {"numeric", gen_numeric}};
      Rng rng(rs.seed);
      Automorphism phi = random_automorphism(g, parse_kind(gen_kind), parse_sigma(gen_sigma), rng, gen_numeric);
      emit(rep.finish({{"automorphism", io::to_json(phi)}, {"description", phi.describe()}}));
    } else if (*apply) {
      cli::Report rep("apply", rs);
      const json aj = cli::automorphism_part(cli::read_json_file(apply_auto));
      const json mj = cli::read_json_file(apply_mats);
      rep.inputs() = {{"automorphism", aj}, {"matrices", mj}};
      Automorphism phi = io::automorphism_from_json(aj);
      SampleMap sm{phi.group(), {}};
      for (const auto& a : read_matrices(mj)) sm.pairs.push_back({a, phi.apply_scaled(a)});
      json result;
      if (apply_samples) {
        result["samples"] = io::to_json(sm);
      } else {
        json images = json::array();
        for (const auto& p : sm.pairs) images.push_back(io::to_json(p.out));
        result["images"] = std::move(images);
      }
      emit(rep.finish(std::move(result)));
    } else if (*verify) {
      cli::Report rep("verify-auto", rs);
      const json aj = cli::automorphism_part(cli::read_json_file(verify_auto));
      rep.inputs() = {{"automorphism", aj}, {"pairs", verify_pairs}};
      Automorphism phi = io::automorphism_from_json(aj);
      Rng rng(rs.seed);
      auto h = check_homomorphism(phi, verify_pairs, rng, rs.tol);
      emit(rep.finish({{"verdict", h.failed == 0 ? "Homomorphism" : "Refuted"},
                       {"tested", h.tested},
                       {"failed", h.failed},
                       {"first_failure", h.first_failure.empty() ? json(nullptr) : json(h.first_failure)}}));
    } else if (*local) {
      cli::Report rep("local-check", rs);
      const json sj = cli::samples_part(cli::read_json_file(local_file));
      rep.inputs() = {{"samples", sj}};
      LocalCheckOptions opts;
      opts.tol = rs.tol;
      opts.threads = local_threads;
      emit(rep.finish(io::to_json(check_map(io::sample_map_from_json(sj), rs.seed, opts))));
    } else if (*rec) {
      cli::Report rep("recover", rs);
      if (rec_samples.empty() && rec_cmd.empty())
        throw Error(ErrorCode::BadArgs, "recover needs --samples or --oracle-cmd");
      std::unique_ptr<Oracle> oracle;
      std::optional<GroupTag> group;
      if (!rec_group.empty()) group = parse_group(rec_group);
      if (!rec_samples.empty()) {
        const json sj = cli::samples_part(cli::read_json_file(rec_samples));
        rep.inputs()["samples"] = sj;
        SampleMap sm = io::sample_map_from_json(sj);
        if (group && !(*group == sm.group))
          throw Error(ErrorCode::BadArgs, "--group " + group->str() + " but the samples are on " + sm.group.str());
        group = sm.group;
        oracle = std::make_unique<SampleOracle>(std::move(sm), rs.tol);
      } else {
        if (!group) throw Error(ErrorCode::BadArgs, "--oracle-cmd needs --group");
        rep.inputs()["oracle_cmd"] = rec_cmd;
        oracle = std::make_unique<cli::SubprocessOracle>(*group, rec_cmd);
      }
      rep.inputs()["group"] = io::to_json(*group);
      const std::string method = rec_method.empty() ? default_method(*group) : rec_method;
      rep.inputs()["method"] = method;
      RecoverOptions opts;
      opts.budget = rs.budget;
      opts.tol = rs.tol;
      RecoveryReport r;
      if (method == "short") {
        r = recover_SLnR_short(*oracle, rs.seed, opts);
      } else if (method == "common") {
        r = recover_SLn_common(*oracle, rs.seed, opts);
      } else if (method == "gl") {
        std::vector<Rational> dets;
        for (const auto& d : rec_dets) {
          try {
            dets.push_back(Rational::parse(d));
          } catch (const Error& e) {
            throw Error(ErrorCode::BadArgs, "--dets: " + e.detail());
          }
        }
        if (dets.empty()) dets = default_dets();
        json dj = json::array();
        for (const auto& d : dets) dj.push_back(io::to_json(d));
        rep.inputs()["dets"] = dj;
        r = recover_GLnR(*oracle, dets, rs.seed, opts);
      } else if (method == "su") {
        r = recover_SUn(*oracle, rs.seed, opts);
      } else if (method == "u") {
        CircleLattice lat = default_circle_lattice();
        if (!rec_lattice.empty()) lat = io::circle_lattice_from_json(cli::read_json_file(rec_lattice));
        rep.inputs()["lattice"] = io::to_json(lat);
        r = recover_Un(*oracle, lat, rs.seed, opts);
      } else {
        throw Error(ErrorCode::BadArgs, "unknown --method " + method);
      }
      emit(rep.finish(io::to_json(r)));
    } else if (*gal) {
      cli::Report rep("gallery", rs);
      rep.inputs() = {{"item", gal_name}, {"n", gal_n}};
      if (gal_name == "gl-local-not-global") {
        GlGalleryOptions opts;
        try {
          opts.p = Rational::parse(gal_p);
          opts.q = Rational::parse(gal_q);
        } catch (const Error& e) {
          throw Error(ErrorCode::BadArgs, "--p/--q: " + e.detail());
        }
        opts.det_one = gal_det_one;
        opts.odd_sign = gal_odd_sign;
        opts.seed = rs.seed;
        rep.inputs().update({{"p", gal_p}, {"q", gal_q}, {"det_one", gal_det_one}, {"odd_sign", gal_odd_sign}});
        emit(rep.finish(io::to_json(gallery_gl_local_not_global(gal_n, opts))));
      } else if (gal_name == "additive-r") {
        rep.inputs() = {{"item", gal_name}, {"k", gal_k}};
        emit(rep.finish(io::to_json(gallery_additive_R(gal_k))));
      } else {
        emit(rep.finish(io::to_json(gallery_sign_twist(gal_n, rs.seed))));
      }
    } else if (*self) {
      cli::Report rep("selftest", rs);
      rep.inputs() = {{"only", self_only}};
      SelftestOptions opts;
      opts.seed = rs.seed;
      opts.only = self_only;
      auto results = run_selftest(opts, [](const CriterionResult& r) { std::cerr << format_result(r) << '\n'; });
      json rows = json::array();
      bool all = true;
      for (const auto& r : results) {
        rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
      }
      // Criterion runtimes stay in the log on stderr; they would break
      // byte-identical reports.
      emit(rep.finish({{"criteria", rows}, {"all_pass", all}}));
    }
  } catch (const Error& e) {
    emit(io::error_json(e));
    return exit_code(e.code());
  } catch (const std::exception& e) {
    emit({{"error", "Internal"}, {"detail", e.what()}});
    return 1;
  }
  return 0;
}
