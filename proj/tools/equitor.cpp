// equitor: equivariant unirationality of torus-preserving actions on toric varieties.
//
//   equitor check <input> [--subgroups all|abelian|none] [--condition-a] [--pu]
//                 [--check-projectivity] [--resolution <file>] [--json <out>]
//   equitor fan <file> [--complete] [--projective]
//   equitor cohomology <group-file> --coeffs <lattice-file> --degree n [--resolution <file>]
//
// Exit status: 0 when the computation finished (whatever the verdict), 1 on
// input or validation errors, 2 on budget or internal self-check failures.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "equitor/io.hpp"

using namespace equitor;

namespace {

struct CheckArgs {
  std::string input;
  std::string subgroups = "none";
  bool condition_a = false;
  bool pu = false;
  bool projectivity = false;
  std::string resolution;
  std::string json_out;
};

struct FanArgs {
  std::string file;
  bool complete = false;
  bool projective = false;
};

struct CohomologyArgs {
  std::string group_file;
  std::string coeffs;
  std::size_t degree = 1;
  std::string resolution;
};

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int run_check(const CheckArgs& a) {
  Problem p = load_problem(a.input);
  ResolutionPtr res = p.resolution;
  if (!a.resolution.empty()) res = load_resolution(a.resolution, p.group);
  AffineTorusAction act = validate_action(p.group, p.assignment, p.fan, res);
  AnalysisOptions opt;
  if (a.subgroups == "all") opt.subgroups = SubgroupScope::All;
  else if (a.subgroups == "abelian") opt.subgroups = SubgroupScope::Abelian;
  opt.condition_a = a.condition_a;
  opt.pu = a.pu;
  opt.check_projectivity = a.projectivity;
  ObstructionReport r = analyze(act, opt);
  if (!a.json_out.empty()) write_output(a.json_out, report_to_json(r, p.index_base));
  if (a.json_out != "-") std::cout << report_to_text(r, p.index_base);
  return 0;
}

int run_fan(const FanArgs& a) {
  std::size_t base = 0;
  Fan f = load_fan(a.file, &base);
  FanDiagnosis diag = diagnose_fan(f);
  std::cout << "dimension " << f.dimension << ", " << f.rays.size() << " rays, " << f.max_cones.size()
            << " max cones\n";
  std::cout << "smooth     " << (diag.ok ? "yes" : "no: " + diag.message) << "\n";
  if (!diag.ok) return 1;
  if (a.complete) std::cout << "complete   " << (is_complete(f) ? "yes" : "no") << "\n";
  if (a.projective) {
    ProjectivityResult pr = is_projective(f);
    switch (pr.status) {
      case ProjectivityResult::Status::Projective: {
        std::cout << "projective yes, support function";
        for (const auto& h : pr.support) std::cout << ' ' << h;
        std::cout << "\n";
        break;
      }
      case ProjectivityResult::Status::NotProjective: std::cout << "projective no\n"; break;
      case ProjectivityResult::Status::BudgetExceeded: std::cout << "projective unverified (budget)\n"; break;
    }
    std::cout << "           " << pr.constraints << " constraints, " << pr.pivots << " pivots\n";
  }
  return 0;
}

int run_cohomology(const CohomologyArgs& a) {
  Problem p = load_problem(a.group_file, true);
  ResolutionPtr res = p.resolution;
  if (!a.resolution.empty()) res = load_resolution(a.resolution, p.group);
  if (res) {
    auto diag = validate_resolution(*res);
    if (!diag.ok) throw ValidationError("resolution", diag.message);
  }
  if (!res || res->length() < a.degree + 1) res = free_resolution(p.group, a.degree + 1);
  LatticeInput l = load_lattice(a.coeffs, p.group);
  CochainComplex cx(res, l.lattice, l.kind);
  CohomologyGroup h = cx.cohomology(a.degree);
  std::cout << "H^" << a.degree << "(G, " << l.lattice.label()
            << (l.kind == Coefficients::QmodZ ? " (x) Q/Z" : "") << ") = " << h.group().to_string() << "\n";
  for (std::size_t i = 0; i < h.generators().size(); ++i)
    std::cout << "  generator " << i << ": " << h.generators()[i].to_string(l.lattice.rank()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant unirationality of torus-preserving actions on toric varieties"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Analyze a group action on a toric variety");
  c->add_option("input", check.input, "Problem document")->required()->check(CLI::ExistingFile);
  c->add_option("--subgroups", check.subgroups, "Subgroups for Amitsur groups and H1(H, Pic)")
      ->check(CLI::IsMember({"all", "abelian", "none"}));
  c->add_flag("--condition-a", check.condition_a, "Check Condition (A) with witness cones");
  c->add_flag("--pu", check.pu, "Run the projective unirationality test");
  c->add_flag("--check-projectivity", check.projectivity, "Decide projectivity of the fan");
  c->add_option("--resolution", check.resolution, "Resolution document for the whole group")
      ->check(CLI::ExistingFile);
  c->add_option("--json", check.json_out, "Write the machine report here ('-' for stdout)");

  FanArgs fan;
  auto* f = app.add_subcommand("fan", "Validate a fan");
  f->add_option("file", fan.file, "Fan or problem document")->required()->check(CLI::ExistingFile);
  f->add_flag("--complete", fan.complete, "Decide completeness");
  f->add_flag("--projective", fan.projective, "Decide projectivity");

  CohomologyArgs coh;
  auto* h = app.add_subcommand("cohomology", "Cohomology of a group with lattice coefficients");
  h->add_option("group-file", coh.group_file, "Document with group and action")->required()->check(CLI::ExistingFile);
  h->add_option("--coeffs", coh.coeffs, "Lattice document")->required()->check(CLI::ExistingFile);
  h->add_option("--degree", coh.degree, "Cohomological degree")->required();
  h->add_option("--resolution", coh.resolution, "Resolution document")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*c) return run_check(check);
    if (*f) return run_fan(fan);
    if (*h) return run_cohomology(coh);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const SelfCheckError& e) {
    std::cerr << "self-check failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
