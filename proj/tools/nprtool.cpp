#include "npr/errors.hpp"
#include "npr/json_io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace {

using npr::Error;
using npr::Json;

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& pe) {
    npr::fail(Error::Kind::Parse, what + ": " + pe.what());
  }
}

std::string require_string(const Json& j, const std::string& what) {
  if (!j.is_string()) npr::fail(Error::Kind::Parse, what + ": expected a string");
  return j.get<std::string>();
}

bool parse_bool(const Json& j, const std::string& what) {
  if (!j.is_boolean()) npr::fail(Error::Kind::Parse, what + ": expected a boolean");
  return j.get<bool>();
}

std::uint64_t parse_u64(const Json& j, const std::string& what) {
  npr::Int v = npr::parse_int(j, what);
  if (v < 0 || v > npr::Int(std::numeric_limits<std::uint64_t>::max()))
    npr::fail(Error::Kind::Parse, what + ": out of range");
  return v.convert_to<std::uint64_t>();
}

unsigned parse_level(const Json& j, const std::string& what) {
  npr::Int v = npr::parse_int(j, what);
  if (v < 1 || v > 64) npr::fail(Error::Kind::Input, what + ": expected a level in [1, 64]");
  return v.convert_to<unsigned>();
}

npr::ElementSet set_from_job(const Json& job) {
  npr::GroupSpec spec =
      npr::parse_group_spec(require_string(job.at("group"), "group"));
  return npr::make_element_set(
      spec, npr::parse_int_arrays(job.at("elements"), "elements"));
}

struct Outcome {
  int code = 0;
  Json result;
};

Outcome run_job(const Json& job) {
  if (!job.is_object())
    npr::fail(Error::Kind::Parse, "job: expected a JSON object");
  if (!job.contains("command"))
    npr::fail(Error::Kind::Parse, "job: missing field \"command\"");
  const std::string cmd = require_string(job.at("command"), "command");

  if (cmd == "check-npr") {
    npr::check_fields(job, {"command", "group", "elements", "n"}, {}, cmd);
    npr::ElementSet e = set_from_job(job);
    npr::NprCertificate cert = npr::is_npr(e, npr::parse_int(job.at("n"), "n"));
    return {cert.holds ? 0 : 1, npr::to_json(cert)};
  }

  if (cmd == "check-independent") {
    npr::check_fields(job, {"command", "group", "elements"}, {}, cmd);
    npr::IndependenceCertificate cert = npr::is_independent(set_from_job(job));
    return {cert.holds ? 0 : 1, npr::to_json(cert)};
  }

  if (cmd == "interpolate") {
    npr::check_fields(job, {"command", "group", "elements", "n", "targets"}, {},
                      cmd);
    npr::InterpolationProblem p;
    p.set = set_from_job(job);
    p.modulus = npr::parse_int(job.at("n"), "n");
    p.targets = npr::parse_int_vector(job.at("targets"), "targets");
    npr::InterpolationResult r = npr::interpolate(p);
    return {r.feasible ? 0 : 1, npr::to_json(r)};
  }

  if (cmd == "extract") {
    npr::check_fields(
        job, {"command", "group", "elements"},
        {"p", "n", "staircase", "exhaustive", "max_independent"}, cmd);
    npr::ElementSet e = set_from_job(job);
    const bool has_p = job.contains("p");
    const bool has_n = job.contains("n");
    const bool staircase =
        job.contains("staircase") && parse_bool(job.at("staircase"), "staircase");
    const bool exhaustive =
        job.contains("exhaustive") && parse_bool(job.at("exhaustive"), "exhaustive");
    const bool maxind = job.contains("max_independent") &&
                        parse_bool(job.at("max_independent"), "max_independent");
    if (maxind && (has_p || has_n || staircase || exhaustive))
      npr::fail(Error::Kind::Input,
                "max_independent does not combine with other extract modes");
    if (maxind)
      return {0, npr::to_json(npr::max_independent_subset(e))};
    if (staircase && !has_p)
      npr::fail(Error::Kind::Input, "staircase extraction needs p");
    if (exhaustive && !staircase)
      npr::fail(Error::Kind::Input, "exhaustive applies to staircase extraction only");
    if (has_n && !has_p)
      npr::fail(Error::Kind::Input, "level n needs p");
    if (staircase) {
      npr::Int p = npr::parse_int(job.at("p"), "p");
      if (has_n) npr::fail(Error::Kind::Input, "staircase does not take a level n");
      return {0, npr::to_json(npr::staircase_extract(e, p, exhaustive))};
    }
    if (has_p && has_n) {
      npr::Int p = npr::parse_int(job.at("p"), "p");
      unsigned n = parse_level(job.at("n"), "n");
      return {0, npr::to_json(npr::cardinality_diagnostic(e, p, n))};
    }
    if (has_p)
      return {0, npr::to_json(npr::extract_ppr(e, npr::parse_int(job.at("p"), "p")))};
    return {0, npr::to_json(npr::extract_any(e))};
  }

  if (cmd == "quotient") {
    npr::check_fields(job, {"command", "group"}, {"p", "n", "torsion", "elements"},
                      cmd);
    npr::GroupSpec spec =
        npr::parse_group_spec(require_string(job.at("group"), "group"));
    const bool torsion =
        job.contains("torsion") && parse_bool(job.at("torsion"), "torsion");
    npr::QuotientMap q;
    if (torsion) {
      if (job.contains("p") || job.contains("n"))
        npr::fail(Error::Kind::Input, "torsion quotient does not take p or n");
      q = npr::quotient_by_torsion(spec);
    } else {
      if (!job.contains("p") || !job.contains("n"))
        npr::fail(Error::Kind::Input, "quotient needs either torsion or p and n");
      q = npr::quotient_pn(spec, npr::parse_int(job.at("p"), "p"),
                           parse_level(job.at("n"), "n"));
    }
    if (job.contains("elements")) {
      npr::ElementSet e = npr::make_element_set(
          spec, npr::parse_int_arrays(job.at("elements"), "elements"));
      Json out = Json::object();
      out["map"] = npr::to_json(q);
      out["mapped"] = npr::to_json(npr::map_set(q, e));
      return {0, out};
    }
    return {0, npr::to_json(q)};
  }

  if (cmd == "decompose") {
    npr::check_fields(job, {"command", "group", "elements", "n"}, {}, cmd);
    npr::ElementSet e = set_from_job(job);
    npr::Prop35Decomposition d =
        npr::decompose_prop35(e, npr::parse_int(job.at("n"), "n"));
    return {d.ok ? 0 : 1, npr::to_json(d)};
  }

  if (cmd == "eps") {
    npr::check_fields(job, {"command", "group", "elements", "grid"},
                      {"max_points", "serial"}, cmd);
    npr::ElementSet e = set_from_job(job);
    npr::Int grid = npr::parse_int(job.at("grid"), "grid");
    std::uint64_t budget =
        job.contains("max_points") ? parse_u64(job.at("max_points"), "max_points") : 0;
    const bool serial =
        job.contains("serial") && parse_bool(job.at("serial"), "serial");
    npr::KroneckerEstimate k = serial
                                   ? npr::weak_kronecker_eps_serial(e, grid, budget)
                                   : npr::weak_kronecker_eps(e, grid, budget);
    return {0, npr::to_json(k)};
  }

  if (cmd == "compose") {
    npr::check_fields(job, {"command", "group", "components"}, {"pairings"}, cmd);
    npr::GroupSpec spec =
        npr::parse_group_spec(require_string(job.at("group"), "group"));
    if (!job.at("components").is_array())
      npr::fail(Error::Kind::Parse, "components: expected an array");
    std::vector<npr::ComposeComponent> comps;
    for (const Json& cj : job.at("components")) {
      npr::check_fields(cj, {"elements", "prime"}, {"exponent"}, "component");
      npr::ComposeComponent cc;
      cc.set = npr::make_element_set(
          spec, npr::parse_int_arrays(cj.at("elements"), "elements"));
      cc.prime = npr::parse_int(cj.at("prime"), "prime");
      cc.exponent =
          cj.contains("exponent") ? parse_level(cj.at("exponent"), "exponent") : 1;
      comps.push_back(std::move(cc));
    }
    std::vector<std::vector<std::size_t>> pairings;
    if (job.contains("pairings")) {
      if (!job.at("pairings").is_array())
        npr::fail(Error::Kind::Parse, "pairings: expected an array of index arrays");
      for (const Json& pj : job.at("pairings")) {
        std::vector<std::size_t> sigma;
        if (!pj.is_array())
          npr::fail(Error::Kind::Parse, "pairings: expected an array of index arrays");
        for (const Json& v : pj) sigma.push_back(npr::parse_size(v, "pairings"));
        pairings.push_back(std::move(sigma));
      }
    }
    npr::ComposeResult r = npr::compose_npr(comps, pairings);
    return {r.ok ? 0 : 1, npr::to_json(r)};
  }

  if (cmd == "oracle") {
    npr::check_fields(job, {"command", "group", "elements", "n"},
                      {"max_points", "serial"}, cmd);
    npr::ElementSet e = set_from_job(job);
    npr::Int n = npr::parse_int(job.at("n"), "n");
    std::uint64_t budget =
        job.contains("max_points") ? parse_u64(job.at("max_points"), "max_points") : 0;
    const bool serial =
        job.contains("serial") && parse_bool(job.at("serial"), "serial");
    const bool ok = serial ? npr::brute_force_check_serial(e, n, budget)
                           : npr::brute_force_check(e, n, budget);
    Json out = Json::object();
    out["verdict"] = ok ? "holds" : "fails";
    return {ok ? 0 : 1, out};
  }

  npr::fail(Error::Kind::Parse, "unknown command \"" + cmd + "\"");
}

Json error_json(const Error& err) {
  Json out = Json::object();
  Json inner = Json::object();
  inner["kind"] = npr::to_string(err.kind());
  inner["message"] = err.what();
  out["error"] = std::move(inner);
  return out;
}

Json internal_error_json(const std::exception& ex) {
  Json out = Json::object();
  Json inner = Json::object();
  inner["kind"] = "internal";
  inner["message"] = ex.what();
  out["error"] = std::move(inner);
  return out;
}

int run_jobfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    Json out = Json::object();
    Json inner = Json::object();
    inner["kind"] = npr::to_string(Error::Kind::Parse);
    inner["message"] = "cannot read jobfile: " + path;
    out["error"] = std::move(inner);
    std::cout << npr::dump_json(out);
    return 2;
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& pe) {
    Json out = Json::object();
    Json inner = Json::object();
    inner["kind"] = npr::to_string(Error::Kind::Parse);
    inner["message"] = std::string("jobfile: ") + pe.what();
    out["error"] = std::move(inner);
    std::cout << npr::dump_json(out);
    return 2;
  }
  if (!doc.is_array()) {
    Json out = Json::object();
    Json inner = Json::object();
    inner["kind"] = npr::to_string(Error::Kind::Parse);
    inner["message"] = "jobfile: expected a JSON array of jobs";
    out["error"] = std::move(inner);
    std::cout << npr::dump_json(out);
    return 2;
  }
  Json results = Json::array();
  int worst = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      Outcome o = run_job(doc[i]);
      results.push_back(std::move(o.result));
      worst = std::max(worst, o.code);
    } catch (const Error& err) {
      Json entry = error_json(err);
      entry["error"]["job"] = i;
      results.push_back(std::move(entry));
      worst = 2;
    } catch (const std::exception& ex) {
      Json entry = internal_error_json(ex);
      entry["error"]["job"] = i;
      results.push_back(std::move(entry));
      worst = 2;
    }
  }
  std::cout << npr::dump_json(results);
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "certified interpolation-set toolkit for finitely generated abelian "
      "groups"};
  app.require_subcommand(1);

  std::string group, elements_text, n_text, p_text, targets_text, grid_text,
      max_points_text, components_text, pairings_text, jobfile_path;
  bool serial = false, staircase = false, exhaustive = false,
       max_independent = false, torsion = false;

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", group, "group spec, e.g. \"Z^1 * Z/4 * Z/2\"")
        ->required();
  };
  auto add_elements = [&](CLI::App* sub, bool required) {
    CLI::Option* opt = sub->add_option("--elements", elements_text,
                                       "JSON array of coordinate arrays");
    if (required) opt->required();
  };

  CLI::App* c_npr = app.add_subcommand("check-npr", "certified N-PR check");
  add_group(c_npr);
  add_elements(c_npr, true);
  c_npr->add_option("--n", n_text, "modulus N >= 1")->required();

  CLI::App* c_ind =
      app.add_subcommand("check-independent", "certified independence check");
  add_group(c_ind);
  add_elements(c_ind, true);

  CLI::App* c_interp = app.add_subcommand(
      "interpolate", "exact solve of gamma_j(x) = exp(2 pi i c_j / N)");
  add_group(c_interp);
  add_elements(c_interp, true);
  c_interp->add_option("--n", n_text, "modulus N >= 1")->required();
  c_interp->add_option("--targets", targets_text, "JSON array of c_j in [0, N)")
      ->required();

  CLI::App* c_extract =
      app.add_subcommand("extract", "certified subset extraction");
  add_group(c_extract);
  add_elements(c_extract, true);
  c_extract->add_option("--p", p_text, "prime for p-PR extraction");
  c_extract->add_option("--n", n_text,
                        "with --p: cardinality diagnostic at level p^n");
  c_extract->add_flag("--staircase", staircase,
                      "greedy staircase over order-p elements (needs --p)");
  c_extract->add_flag("--exhaustive", exhaustive,
                      "try all orderings in staircase mode (|E| <= 10)");
  c_extract->add_flag("--max-independent", max_independent,
                      "exhaustive maximum independent subset (|E| <= 20)");

  CLI::App* c_quot =
      app.add_subcommand("quotient", "torsion or p^n quotient map");
  add_group(c_quot);
  add_elements(c_quot, false);
  c_quot->add_option("--p", p_text, "prime");
  c_quot->add_option("--n", n_text, "level n >= 1");
  c_quot->add_flag("--torsion", torsion, "quotient by the full torsion subgroup");

  CLI::App* c_dec = app.add_subcommand(
      "decompose", "split an N-PR set along the prime factorization of N");
  add_group(c_dec);
  add_elements(c_dec, true);
  c_dec->add_option("--n", n_text, "composite modulus N")->required();

  CLI::App* c_eps = app.add_subcommand(
      "eps", "exhaustive weak epsilon-Kronecker estimate on an M-th-roots grid");
  add_group(c_eps);
  add_elements(c_eps, true);
  c_eps->add_option("--grid", grid_text, "grid size M >= 1")->required();
  c_eps->add_option("--max-points", max_points_text,
                    "enumeration budget override");
  c_eps->add_flag("--serial", serial, "use the exact serial reference kernel");

  CLI::App* c_comp = app.add_subcommand(
      "compose", "compose per-prime components into a product-modulus PR set");
  add_group(c_comp);
  c_comp->add_option("--components", components_text,
                     "JSON array of {elements, prime, exponent}")
      ->required();
  c_comp->add_option("--pairings", pairings_text,
                     "JSON array of index permutations");

  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "brute-force N-PR ground truth by full enumeration");
  add_group(c_oracle);
  add_elements(c_oracle, true);
  c_oracle->add_option("--n", n_text, "modulus N >= 1")->required();
  c_oracle->add_option("--max-points", max_points_text,
                       "enumeration budget override");
  c_oracle->add_flag("--serial", serial, "use the exact serial reference kernel");

  CLI::App* c_job =
      app.add_subcommand("jobfile", "run a JSON array of jobs, one result each");
  c_job->add_option("path", jobfile_path, "jobfile path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(c_job)) return run_jobfile(jobfile_path);

  try {
    Json job = Json::object();
    CLI::App* chosen = app.get_subcommands().front();
    auto given = [&](const std::string& name) {
      const CLI::Option* opt = chosen->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    job["command"] = chosen->get_name();
    job["group"] = group;
    if (given("--elements"))
      job["elements"] = parse_json_text(elements_text, "elements");
    if (given("--n")) job["n"] = n_text;
    if (given("--p")) job["p"] = p_text;
    if (given("--targets"))
      job["targets"] = parse_json_text(targets_text, "targets");
    if (given("--grid")) job["grid"] = grid_text;
    if (given("--max-points")) job["max_points"] = max_points_text;
    if (given("--components"))
      job["components"] = parse_json_text(components_text, "components");
    if (given("--pairings"))
      job["pairings"] = parse_json_text(pairings_text, "pairings");
    if (serial) job["serial"] = true;
    if (staircase) job["staircase"] = true;
    if (exhaustive) job["exhaustive"] = true;
    if (max_independent) job["max_independent"] = true;
    if (torsion) job["torsion"] = true;

    Outcome o = run_job(job);
    std::cout << npr::dump_json(o.result);
    return o.code;
  } catch (const Error& err) {
    std::cout << npr::dump_json(error_json(err));
    return 2;
  } catch (const std::exception& ex) {
    std::cout << npr::dump_json(internal_error_json(ex));
    return 2;
  }
}
