// Command line front end: loads a JSON model and runs spectra, resolutions,
// multiplicity tables, supports, and the verification suites over it.
//
// Exit codes: 0 all assertions passed; 1 a verified equation failed;
// 2 input error; 3 an enumeration budget or truncated resolution
// prevented a verdict.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "atomcalc/atoms.hpp"
#include "atomcalc/model_io.hpp"
#include "atomcalc/noeth.hpp"
#include "atomcalc/resolutions.hpp"
#include "atomcalc/supports.hpp"

namespace {

using namespace atomcalc;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr int kNoVerdict = 3;

struct Options {
  std::string model;
  std::string command;
  std::string what;    // verify subject
  std::string atom;    // atomic-object
  std::string module;  // module-taking commands
  long long max_degree = 4;
  std::string format = "human";
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000000;
  bool projective = false;
};

bool human(const Options& o) { return o.format != "json"; }

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Every report starts from the same envelope so that output is traceable:
// exact input bytes, degree bound, and seed.
Json envelope(const LoadedModel& lm, const Options& o) {
  Json r;
  r["command"] = o.command == "verify" ? o.command + " " + o.what : o.command;
  r["model_hash"] = hash_hex(lm.hash);
  r["max_degree"] = o.max_degree;
  r["seed"] = o.seed;
  return r;
}

void emit(const Json& rep, const Options& o) {
  if (!human(o)) std::cout << rep.dump(2) << "\n";
}

const char* tail_name(TailKind t) {
  switch (t) {
    case TailKind::zero: return "zero";
    case TailKind::periodic: return "periodic";
    default: return "truncated";
  }
}

template <typename Scalar>
Json matrix_json(const MatrixX<Scalar>& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c)
      row.push_back(scalar_to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Scalar>
const RightModule<Scalar>& need_module(const Model<Scalar>& m,
                                       const std::string& name,
                                       const char* flag) {
  if (name.empty())
    throw ModelError(std::string("this command needs ") + flag);
  if (const auto* p = m.find_module(name)) return *p;
  std::string names;
  for (const auto& n : m.module_names)
    names += (names.empty() ? "" : ", ") + n;
  throw ModelError("unknown module '" + name + "'; available: " + names);
}

// Output names for the simple classes: the name of a file module in the
// class when one exists, an indexed fallback otherwise.
template <typename Scalar>
std::vector<std::string> atom_labels(const Model<Scalar>& m,
                                     const Engine<Scalar>& eng,
                                     const Options& o) {
  std::vector<std::string> out;
  for (size_t i = 0; i < eng.cov.simples.size(); ++i) {
    std::string label = "alpha" + std::to_string(i);
    for (size_t k = 0; k < m.module_names.size(); ++k)
      if (m.module_values[k].dim() == eng.cov.simples[i].dim() &&
          is_isomorphic(m.module_values[k], eng.cov.simples[i], o.budget,
                        o.seed)
              .isomorphic) {
        label = m.module_names[k];
        break;
      }
    out.push_back(label);
  }
  return out;
}

template <typename Scalar>
int cmd_aspec(const LoadedModel& lm, const Model<Scalar>& m,
              const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  auto labels = atom_labels(m, eng, o);
  Json rep = envelope(lm, o);
  rep["complete"] = true;
  Json atoms = Json::array();
  for (size_t i = 0; i < eng.cov.simples.size(); ++i) {
    Atom<Scalar> a = make_atom(eng, i);
    Json ja;
    ja["atom"] = labels[i];
    ja["simple_dim"] = a.simple.dim();
    ja["residue_dim"] = a.residue_dim;
    ja["envelope_dim"] = a.envelope.dim();
    ja["atomic_dim"] = a.atomic.dim();
    atoms.push_back(std::move(ja));
    if (human(o))
      std::cout << labels[i] << ": simple dim " << a.simple.dim()
                << ", residue dim " << a.residue_dim << ", envelope dim "
                << a.envelope.dim() << ", atomic object dim "
                << a.atomic.dim() << "\n";
  }
  rep["atoms"] = std::move(atoms);
  emit(rep, o);
  return kPass;
}

template <typename Scalar>
int cmd_atomic_object(const LoadedModel& lm, const Model<Scalar>& m,
                      const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  const RightModule<Scalar>& S = need_module(m, o.atom, "--atom <name>");
  std::optional<size_t> idx;
  for (size_t i = 0; i < eng.cov.simples.size() && !idx; ++i)
    if (S.dim() == eng.cov.simples[i].dim() &&
        is_isomorphic(S, eng.cov.simples[i], o.budget, o.seed).isomorphic)
      idx = i;
  if (!idx)
    throw ModelError("module '" + o.atom + "' is not a simple module");
  Atom<Scalar> a = make_atom(eng, *idx);
  Json rep = envelope(lm, o);
  rep["complete"] = true;
  rep["atom"] = o.atom;
  rep["atomic_dim"] = a.atomic.dim();
  rep["residue_dim"] = a.residue_dim;
  rep["envelope_dim"] = a.envelope.dim();
  Json acts = Json::array();
  for (Index j = 0; j < m.alg->dim(); ++j)
    acts.push_back(matrix_json<Scalar>(a.atomic.action(j)));
  rep["actions"] = std::move(acts);
  if (human(o))
    std::cout << "atomic object of " << o.atom << ": dim " << a.atomic.dim()
              << " inside the envelope of dim " << a.envelope.dim()
              << "; residue field dim " << a.residue_dim << "\n";
  emit(rep, o);
  return kPass;
}

template <typename Scalar>
int cmd_resolve(const LoadedModel& lm, const Model<Scalar>& m,
                const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  auto labels = atom_labels(m, eng, o);
  const RightModule<Scalar>& M = need_module(m, o.module, "--module <name>");
  Index deg = static_cast<Index>(o.max_degree);
  Resolution<Scalar> R =
      o.projective ? minimal_projective_resolution(M, eng, deg)
                   : minimal_injective_resolution(M, eng, deg);
  Json rep = envelope(lm, o);
  rep["module"] = o.module;
  rep["kind"] = o.projective ? "projective" : "injective";
  rep["tail"] = tail_name(R.tail);
  rep["complete"] = R.certified(deg);
  if (R.tail == TailKind::periodic) {
    rep["period_start"] = R.period_start;
    rep["period_length"] = R.period_length;
  }
  Json terms = Json::array();
  for (size_t i = 0; i < R.terms.size(); ++i) {
    Json jt;
    jt["degree"] = i;
    jt["dim"] = R.terms[i].dim();
    Json mult;
    for (size_t a = 0; a < labels.size(); ++a)
      mult[labels[a]] = R.multiplicity[i][a];
    jt["multiplicity"] = std::move(mult);
    terms.push_back(std::move(jt));
    if (human(o)) {
      std::cout << (o.projective ? "P" : "E") << "^" << i << ": dim "
                << R.terms[i].dim() << " [";
      for (size_t a = 0; a < labels.size(); ++a)
        std::cout << (a ? ", " : "") << labels[a] << ": "
                  << R.multiplicity[i][a];
      std::cout << "]\n";
    }
  }
  rep["terms"] = std::move(terms);
  if (human(o))
    std::cout << "tail: " << tail_name(R.tail)
              << (R.certified(deg) ? "" : " (degrees beyond the computed range are unknown)")
              << "\n";
  emit(rep, o);
  return kPass;
}

template <typename Scalar>
int cmd_bass(const LoadedModel& lm, const Model<Scalar>& m, const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  auto labels = atom_labels(m, eng, o);
  const RightModule<Scalar>& M = need_module(m, o.module, "--module <name>");
  Index deg = static_cast<Index>(o.max_degree);
  Resolution<Scalar> R = minimal_injective_resolution(M, eng, deg);
  Json rep = envelope(lm, o);
  rep["module"] = o.module;
  bool complete = true;
  Json rows = Json::array();
  for (Index i = 0; i <= deg; ++i) {
    if (!R.certified(i)) {
      complete = false;
      break;
    }
    Json jr;
    jr["degree"] = i;
    Json mu;
    for (size_t a = 0; a < labels.size(); ++a)
      mu[labels[a]] = bass_number(eng, R, a, i);
    jr["mu"] = std::move(mu);
    rows.push_back(std::move(jr));
    if (human(o)) {
      std::cout << "degree " << i << ": ";
      for (size_t a = 0; a < labels.size(); ++a)
        std::cout << (a ? ", " : "") << "mu(" << labels[a]
                  << ") = " << bass_number(eng, R, a, i);
      std::cout << "\n";
    }
  }
  rep["complete"] = complete;
  rep["rows"] = std::move(rows);
  if (human(o) && !complete)
    std::cout << "resolution truncated before degree " << deg
              << "; higher multiplicities unknown\n";
  emit(rep, o);
  return kPass;
}

template <typename Scalar>
int cmd_asupp(const LoadedModel& lm, const Model<Scalar>& m,
              const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  auto labels = atom_labels(m, eng, o);
  const RightModule<Scalar>& M = need_module(m, o.module, "--module <name>");
  AtomSet s = small_atom_support(M, eng, static_cast<Index>(o.max_degree));
  Json rep = envelope(lm, o);
  rep["module"] = o.module;
  rep["complete"] = s.complete;
  Json sup = Json::array();
  for (size_t i = 0; i < s.size(); ++i)
    if (s.contains(i)) sup.push_back(labels[i]);
  rep["support"] = std::move(sup);
  if (human(o)) {
    std::cout << "support of " << o.module << ": {";
    bool first = true;
    for (size_t i = 0; i < s.size(); ++i)
      if (s.contains(i)) {
        std::cout << (first ? "" : ", ") << labels[i];
        first = false;
      }
    std::cout << "}" << (s.complete ? "" : " (partial: resolution truncated)")
              << "\n";
  }
  emit(rep, o);
  return kPass;
}

template <typename Scalar>
int cmd_monoform(const LoadedModel& lm, const Model<Scalar>& m,
                 const Options& o) {
  const RightModule<Scalar>& M = need_module(m, o.module, "--module <name>");
  auto mr = is_monoform(M, o.budget, o.seed);
  Json rep = envelope(lm, o);
  rep["module"] = o.module;
  rep["complete"] = true;
  const char* verdict = mr.verdict == MonoformVerdict::monoform
                            ? "monoform"
                            : mr.verdict == MonoformVerdict::uniform_only
                                  ? "uniform-but-not-monoform"
                                  : "not-uniform";
  rep["verdict"] = verdict;
  if (mr.verdict == MonoformVerdict::uniform_only)
    rep["shared_subobject_dim"] = mr.shared_dim;
  if (human(o)) std::cout << o.module << ": " << verdict << "\n";
  emit(rep, o);
  return kPass;
}

template <typename Scalar>
int verify_theorem(const LoadedModel& lm, const Model<Scalar>& m,
                   const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  auto labels = atom_labels(m, eng, o);
  Index deg = static_cast<Index>(o.max_degree);
  bool ok = true, complete = true;
  Json rep = envelope(lm, o);
  Json mods = Json::array();
  for (size_t k = 0; k < m.module_names.size(); ++k) {
    TheoremReport<Scalar> tr =
        verify_main_theorem(m.module_values[k], eng, deg);
    bool mcomp =
        tr.tail == TailKind::zero || tr.certified_through >= deg;
    ok = ok && tr.all_match;
    complete = complete && mcomp;
    Json jm;
    jm["module"] = m.module_names[k];
    jm["all_match"] = tr.all_match;
    jm["complete"] = mcomp;
    Json rows = Json::array();
    for (const auto& r : tr.rows) {
      Json jr;
      jr["atom"] = labels[r.alpha];
      jr["degree"] = r.degree;
      jr["mu"] = r.mu_hom;
      jr["ext"] = r.ext_dim;
      jr["match"] = r.match;
      rows.push_back(std::move(jr));
      if (human(o))
        std::cout << "mu_" << r.degree << "(" << labels[r.alpha] << ", "
                  << m.module_names[k] << ") = " << r.mu_hom
                  << (r.match ? " = " : " != ") << r.ext_dim
                  << " = ext_" << r.degree << "\n";
    }
    jm["rows"] = std::move(rows);
    mods.push_back(std::move(jm));
  }
  rep["modules"] = std::move(mods);
  rep["ok"] = ok;
  rep["complete"] = complete;
  if (human(o))
    std::cout << (ok ? (complete ? "all equations hold"
                                 : "no mismatch, but some degrees unverified")
                     : "MISMATCH FOUND")
              << "\n";
  emit(rep, o);
  if (!ok) return kViolation;
  return complete ? kPass : kNoVerdict;
}

template <typename Scalar>
int verify_class(const LoadedModel& lm, const Model<Scalar>& m,
                 const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  ClassificationReport cr =
      verify_classification(eng, static_cast<Index>(o.max_degree));
  Json rep = envelope(lm, o);
  rep["ok"] = cr.ok;
  rep["complete"] = true;
  rep["subsets_checked"] = cr.subsets_checked;
  rep["sums_checked"] = cr.sums_checked;
  if (human(o))
    std::cout << (cr.ok ? "classification holds: " : "CLASSIFICATION FAILS: ")
              << cr.subsets_checked << " subsets, " << cr.sums_checked
              << " direct sums checked\n";
  emit(rep, o);
  return cr.ok ? kPass : kViolation;
}

template <typename Scalar>
int verify_closure_cmd(const LoadedModel& lm, const Model<Scalar>& m,
                       const Options& o) {
  Engine<Scalar> eng = make_engine(*m.alg, o.budget, o.seed);
  Index deg = static_cast<Index>(o.max_degree);
  size_t sequences = 0, complete_cnt = 0, violations = 0;
  for (const auto& M : m.module_values) {
    if (M.dim() == 0) continue;
    auto subs = enumerate_submodules(M, o.budget);
    for (const auto& U : subs) {
      OwnedShortExact<Scalar> s = sequence_from_submodule(M, U);
      ClosureReport cr = verify_closure(s.view(M), eng, deg);
      ++sequences;
      if (!(cr.ass_sub_in_mid && cr.ass_mid_in_union)) ++violations;
      if (cr.complete) {
        ++complete_cnt;
        if (!cr.all()) ++violations;
      }
    }
  }
  Json rep = envelope(lm, o);
  bool ok = violations == 0;
  rep["ok"] = ok;
  rep["complete"] = complete_cnt == sequences;
  rep["sequences"] = sequences;
  rep["with_complete_supports"] = complete_cnt;
  rep["violations"] = violations;
  if (human(o))
    std::cout << (ok ? "closure holds: " : "CLOSURE FAILS: ") << sequences
              << " short exact sequences, " << complete_cnt
              << " with complete supports, " << violations << " violations\n";
  emit(rep, o);
  if (!ok) return kViolation;
  return (sequences > 0 && complete_cnt == 0) ? kNoVerdict : kPass;
}

template <typename Scalar>
int verify_final_example(const LoadedModel& lm, const Model<Scalar>& m,
                         const Options& o) {
  if (!m.noeth)
    throw ModelError("model has no base_ring section");
  if (m.noeth->base.count() != 1)
    throw ModelError("the column example needs a one-factor base ring");
  std::string name = o.module;
  if (name.empty()) {
    if (m.base_module_names.size() == 1)
      name = m.base_module_names.front();
    else
      name = "V";
  }
  const RightModule<Scalar>* V = m.find_base_module(name);
  if (!V) {
    std::string names;
    for (const auto& n : m.base_module_names)
      names += (names.empty() ? "" : ", ") + n;
    throw ModelError("unknown base module '" + name + "'; available: " +
                     names);
  }
  ColumnExampleReport cr =
      verify_column_example(m.noeth->base, *V, o.budget, o.seed);
  Json rep = envelope(lm, o);
  rep["module"] = name;
  rep["ok"] = cr.ok;
  rep["complete"] = true;
  rep["mu0_corner"] = cr.mu0_corner;
  rep["mu0_other"] = cr.mu0_other;
  rep["mu1_corner"] = cr.mu1_corner;
  rep["mu1_other"] = cr.mu1_other;
  rep["base_mu0"] = cr.base_mu0;
  rep["base_mu1"] = cr.base_mu1;
  rep["transfer_ok"] = cr.transfer_ok;
  if (human(o)) {
    std::cout << "mu_0(corner, M) = " << cr.mu0_corner
              << "  (base mu_0 = " << cr.base_mu0 << ")\n";
    std::cout << "mu_0(other, M)  = " << cr.mu0_other << "  (expected 0)\n";
    std::cout << "mu_1(corner, M) = " << cr.mu1_corner
              << "  (base mu_1 = " << cr.base_mu1 << ")\n";
    std::cout << "mu_1(other, M)  = " << cr.mu1_other
              << "  (base mu_0 = " << cr.base_mu0 << ")\n";
    std::cout << "block transfer: " << (cr.transfer_ok ? "agrees" : "DISAGREES")
              << "\n"
              << (cr.ok ? "all four equations hold" : "EQUATION FAILED")
              << "\n";
  }
  emit(rep, o);
  return cr.ok ? kPass : kViolation;
}

template <typename Scalar>
int run(const LoadedModel& lm, const Model<Scalar>& m, const Options& o) {
  if (o.command == "aspec") return cmd_aspec(lm, m, o);
  if (o.command == "atomic-object") return cmd_atomic_object(lm, m, o);
  if (o.command == "resolve") return cmd_resolve(lm, m, o);
  if (o.command == "bass") return cmd_bass(lm, m, o);
  if (o.command == "asupp") return cmd_asupp(lm, m, o);
  if (o.command == "monoform") return cmd_monoform(lm, m, o);
  if (o.command == "verify") {
    if (o.what == "main-theorem") return verify_theorem(lm, m, o);
    if (o.what == "classification") return verify_class(lm, m, o);
    if (o.what == "closure") return verify_closure_cmd(lm, m, o);
    return verify_final_example(lm, m, o);
  }
  throw ModelError("unknown command");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("ATOMCALC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      std::cerr << "error: ATOMCALC_BUDGET must be a positive integer\n";
      return kInputError;
    }
    o.budget = v;
  }

  CLI::App app{"exact homological calculator for finite dimensional algebras"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("model", o.model, "model file (JSON)")->required();
    sub->add_option("--max-degree", o.max_degree, "largest degree computed")
        ->check(CLI::Range(0, 64));
    sub->add_option("--format", o.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--seed", o.seed, "seed for randomized searches");
    sub->add_option("--budget", o.budget, "enumeration work cap");
  };

  add_common(app.add_subcommand("aspec", "list the atom spectrum"));
  auto* ao = app.add_subcommand("atomic-object",
                                "print the atomic object of a simple module");
  ao->add_option("--atom", o.atom, "name of a simple module")->required();
  add_common(ao);
  auto* rs = app.add_subcommand("resolve", "minimal resolution of a module");
  rs->add_option("--module", o.module, "module name")->required();
  rs->add_flag("--projective", o.projective, "projective instead of injective");
  add_common(rs);
  auto* bs = app.add_subcommand("bass", "multiplicity table of a module");
  bs->add_option("--module", o.module, "module name")->required();
  add_common(bs);
  auto* as = app.add_subcommand("asupp", "small atom support of a module");
  as->add_option("--module", o.module, "module name")->required();
  add_common(as);
  auto* mf = app.add_subcommand("monoform", "monoform verdict for a module");
  mf->add_option("--module", o.module, "module name")->required();
  add_common(mf);
  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("subject", o.what, "what to verify")
      ->required()
      ->check(CLI::IsMember({"main-theorem", "classification", "closure",
                             "noeth-final-example"}));
  vf->add_option("--module", o.module, "base module for the column example");
  add_common(vf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kInputError;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    LoadedModel lm = load_model(o.model, o.budget);
    return std::visit([&](const auto& m) { return run(lm, m, o); }, lm.value);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kNoVerdict;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
