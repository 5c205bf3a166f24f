// Command line front end: loads JSON structure files, runs the requested
// check suite, prints machine-readable JSON lines to stdout and a human
// summary to stderr.
//
// Exit codes: 0 all requested checks pass, 1 a check fails, 2 malformed
// input, 3 unknown reference, 4 hypothesis failure, 64 usage error.

#include <cstddef>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "entwine/builtin.hpp"
#include "entwine/report.hpp"
#include "entwine/specfile.hpp"

namespace {

using namespace entwine;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kMalformed = 2;
constexpr int kUnknownRef = 3;
constexpr int kHypothesis = 4;

int finish(const std::string& what, const CheckReport& report) {
  emit_report(std::cout, report);
  summarize_report(std::cerr, what, report);
  return report.ok() ? kPass : kCheckFailed;
}

const Entwining& entwining_ref(const SpecFile& spec, const std::string& name) {
  return detail::resolve(spec.entwinings, name, "entwining").value;
}

const Bialgebra& bialgebra_ref(const SpecFile& spec, const std::string& name) {
  return detail::resolve(spec.bialgebras, name, "bialgebra").value;
}

void require_shared_carrier(const Entwining& e, const std::string& what) {
  if (!single_carrier(e))
    throw HypothesisError(what + ": requires one shared carrier for both structures");
}

int cmd_check_operad(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  return finish("operad '" + name + "'",
                check_operad(detail::resolve(spec.operads, name, "operad").value, cache));
}

int cmd_check_cooperad(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  return finish("cooperad '" + name + "'",
                check_cooperad(detail::resolve(spec.cooperads, name, "cooperad").value, cache));
}

int cmd_check_entwining(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  return finish("entwining '" + name + "'", check_entwining(entwining_ref(spec, name), cache));
}

int cmd_check_compatible(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  const Entwining& e = entwining_ref(spec, name);
  require_shared_carrier(e, "check-compatible");
  return finish("compatibility of '" + name + "'", check_compatible(e, cache));
}

int cmd_check_bimonad(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  const Entwining& e = entwining_ref(spec, name);
  require_shared_carrier(e, "check-bimonad");
  return finish("bimonad conditions of '" + name + "'", check_bimonad(e, cache));
}

int cmd_solve_antipode(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  const Entwining& e = entwining_ref(spec, name);
  require_shared_carrier(e, "solve-antipode");
  const AntipodeResult result = solve_antipode(e, cache);
  std::cout << antipode_to_json(result).dump() << "\n";
  if (result.antipode) {
    std::cerr << "antipode of '" << name << "': solved, both convolution identities exact\n";
    return kPass;
  }
  std::cerr << "antipode of '" << name << "': no solution at arity " << result.failed_arity
            << " (" << result.certificate << ")\n";
  return kCheckFailed;
}

int cmd_primitives(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  const PrimitiveSubspace prim = primitives(bialgebra_ref(spec, name), cache);
  std::cout << primitives_to_json(prim).dump() << "\n";
  std::cerr << "primitives of '" << name << "': dimension " << prim.dimension << "\n";
  return kPass;
}

int cmd_phi(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  const Entwining& e = entwining_ref(spec, name);
  const SeqMorphism phi = phi_map(e, cache);
  const bool iso = check_H2iso(e, cache);
  std::cout << phi_to_json(phi, iso).dump() << "\n";
  std::cerr << "comparison of '" << name << "': "
            << (iso ? "invertible in every arity" : "not invertible in some arity") << "\n";
  return iso ? kPass : kCheckFailed;
}

int cmd_rigidity(const std::string& path, const std::string& name, PlethCache& cache) {
  const SpecFile spec = load_spec_path(path, LoadMode::lenient, cache);
  const RigidityReport report = rigidity_verify(bialgebra_ref(spec, name), cache);
  std::cout << rigidity_to_json(report).dump() << "\n";
  if (!report.hypotheses_ok()) {
    std::cerr << "rigidity of '" << name << "': hypotheses fail; no verdict\n";
    return kHypothesis;
  }
  std::cerr << "rigidity of '" << name << "': "
            << (report.ok() ? "freely and cofreely rebuilt from " +
                                  std::to_string(report.prim_dim) + " primitives"
                            : "reconstruction fails")
            << "\n";
  return report.ok() ? kPass : kCheckFailed;
}

int cmd_demo(std::size_t dim, std::size_t trunc, PlethCache& cache) {
  const Entwining e = builtin::build_infinitesimal(trunc, cache);
  bool all_ok = true;

  const auto stage = [&](const std::string& what, const CheckReport& report) {
    emit_report(std::cout, report);
    summarize_report(std::cerr, what, report);
    all_ok = all_ok && report.ok();
  };

  stage("exchange diagrams", check_entwining(e, cache));
  stage("compatibility", check_compatible(e, cache));
  stage("comultiplication absorption", check_delta_law(e, cache));
  stage("multiplication absorption", check_m_law(e, cache));
  stage("bimonad conditions", check_bimonad(e, cache));

  const SeqMorphism phi = phi_map(e, cache);
  const bool iso = check_H2iso(e, cache);
  std::cout << phi_to_json(phi, iso).dump() << "\n";
  std::cerr << "species comparison: " << (iso ? "invertible" : "not invertible") << "\n";
  all_ok = all_ok && iso;

  const AntipodeResult antipode = solve_antipode(e, cache);
  std::cout << antipode_to_json(antipode).dump() << "\n";
  std::cerr << "antipode: " << (antipode.antipode ? "solved" : "missing") << "\n";
  all_ok = all_ok && antipode.antipode.has_value();

  const Bialgebra b = comparison_K(e, dim, trunc, cache);
  stage("bialgebra axioms", check_bimodule(b, cache));
  stage("triangular structure", check_t_triangular(b, cache));

  const PrimitiveSubspace prim = primitives(b, cache);
  std::cout << primitives_to_json(prim).dump() << "\n";
  std::cerr << "primitives: dimension " << prim.dimension << "\n";
  all_ok = all_ok && prim.dimension == dim;  // one primitive per inserted generator

  const RigidityReport rigidity = rigidity_verify(b, cache);
  std::cout << rigidity_to_json(rigidity).dump() << "\n";
  std::cerr << "reconstruction: " << (rigidity.ok() ? "pass" : "fail") << "\n";
  all_ok = all_ok && rigidity.ok();

  return all_ok ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact checker for operads, cooperads, entwining laws, and the "
      "reconstruction of bialgebras from their primitives"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 pass, 1 check failure, 2 malformed input, 3 unknown "
      "reference, 4 hypothesis failure, 64 usage error");

  struct {
    std::string file, name;
    std::size_t dim = 1, trunc = 3;
  } args;

  const auto add_ref_command = [&](const std::string& cmd, const std::string& what) {
    CLI::App* sub = app.add_subcommand(cmd, what);
    sub->add_option("file", args.file, "JSON structure file")->required();
    sub->add_option("name", args.name, "name of the structure in the file")->required();
    return sub;
  };

  CLI::App* op = add_ref_command("check-operad", "verify the monoid axioms of an operad");
  CLI::App* co = add_ref_command("check-cooperad", "verify the comonoid axioms of a cooperad");
  CLI::App* ent = add_ref_command("check-entwining", "verify the four exchange diagrams");
  CLI::App* compat =
      add_ref_command("check-compatible", "verify multiplication/comultiplication compatibility");
  CLI::App* bimonad = add_ref_command("check-bimonad", "verify the full bimonad conditions");
  CLI::App* antipode = add_ref_command("solve-antipode", "solve the convolution identities");
  CLI::App* prim = add_ref_command("primitives", "compute the primitive subspace of a bialgebra");
  CLI::App* phi = add_ref_command("phi", "compute the species comparison and its invertibility");
  CLI::App* rigidity =
      add_ref_command("rigidity", "verify a bialgebra is rebuilt from its primitives");

  CLI::App* demo = app.add_subcommand(
      "demo-infinitesimal", "run the full pipeline on the built-in word-splitting law");
  demo->add_option("--dim", args.dim, "generators in degree one")->capture_default_str();
  demo->add_option("--trunc", args.trunc, "truncation arity")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  PlethCache cache;
  try {
    if (op->parsed()) return cmd_check_operad(args.file, args.name, cache);
    if (co->parsed()) return cmd_check_cooperad(args.file, args.name, cache);
    if (ent->parsed()) return cmd_check_entwining(args.file, args.name, cache);
    if (compat->parsed()) return cmd_check_compatible(args.file, args.name, cache);
    if (bimonad->parsed()) return cmd_check_bimonad(args.file, args.name, cache);
    if (antipode->parsed()) return cmd_solve_antipode(args.file, args.name, cache);
    if (prim->parsed()) return cmd_primitives(args.file, args.name, cache);
    if (phi->parsed()) return cmd_phi(args.file, args.name, cache);
    if (rigidity->parsed()) return cmd_rigidity(args.file, args.name, cache);
    if (demo->parsed()) return cmd_demo(args.dim, args.trunc, cache);
  } catch (const UnknownReference& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUnknownRef;
  } catch (const HypothesisError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kHypothesis;
  } catch (const SpecError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kMalformed;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kMalformed;
  }
  return 64;
}
