#include "cli.hpp"

#include "nqkit/basic.hpp"
#include "nqkit/error.hpp"
#include "nqkit/fixtures.hpp"
#include "nqkit/hydra.hpp"
#include "nqkit/lcs.hpp"
#include "nqkit/magnus.hpp"
#include "nqkit/nq.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace nqkit::cli {

using nlohmann::ordered_json;

namespace {

// Budget defaults come from the environment so batch runs can tighten or
// relax them without touching scripts.
template <typename T> T env_or(const char *name, T fallback) {
  const char *v = std::getenv(name);
  if (!v || !*v)
    return fallback;
  try {
    return static_cast<T>(std::stoull(v));
  } catch (const std::exception &) {
    throw Error(std::string("bad value for ") + name + ": " + v);
  }
}

struct PresentationSource {
  std::string file;
  std::string fixture;
  std::string gens;
  std::vector<std::string> rels;

  void add_to(CLI::App *cmd) {
    auto *f = cmd->add_option("--pres", file, "presentation file");
    auto *x = cmd->add_option("--fixture", fixture, "built-in presentation name");
    auto *g = cmd->add_option("--gens", gens, "inline generators, e.g. \"a,t\"");
    // Relators start with '[' and would otherwise be split as a list.
    cmd->add_option("--rel", rels, "inline relator (repeatable)")
        ->needs(g)
        ->allow_extra_args(false);
    f->excludes(x)->excludes(g);
    x->excludes(g);
  }

  Presentation load() const {
    if (!file.empty())
      return read_presentation_file(file);
    if (!fixture.empty())
      return load_fixture(fixture);
    if (gens.empty())
      throw DomainError("give one of --pres, --fixture or --gens");
    std::string text = "gens: " + gens + "\n";
    for (const auto &r : rels)
      text += "rel: " + r + "\n";
    return parse_presentation(text);
  }
};

struct Budget {
  NqOptions options;

  Budget() {
    options.max_class = env_or<unsigned>("NQKIT_MAX_CLASS", options.max_class);
    options.max_generators = env_or<std::size_t>("NQKIT_MAX_GENERATORS", options.max_generators);
    options.max_bits = env_or<std::size_t>("NQKIT_MAX_BITS", options.max_bits);
    options.max_collection_steps =
        env_or<std::uint64_t>("NQKIT_MAX_STEPS", options.max_collection_steps);
  }

  void add_to(CLI::App *cmd) {
    cmd->add_option("--max-generators", options.max_generators, "pc generator budget");
    cmd->add_option("--max-bits", options.max_bits, "exponent size budget (bits)");
    cmd->add_option("--max-steps", options.max_collection_steps, "collection step budget");
  }
};

AlphabetPtr alphabet_from(const std::string &spec) {
  // Either a count ("3" -> x1, x2, x3) or a comma list of names.
  if (!spec.empty() && std::all_of(spec.begin(), spec.end(), ::isdigit)) {
    const unsigned q = static_cast<unsigned>(std::stoul(spec));
    if (q == 0)
      throw DomainError("need at least one generator");
    std::vector<std::string> names;
    for (unsigned i = 1; i <= q; ++i)
      names.push_back("x" + std::to_string(i));
    return make_alphabet(std::move(names));
  }
  return parse_presentation("gens: " + spec + "\n").alphabet();
}

std::string gen_exp_text(const GenExpWord &w) {
  if (w.empty())
    return "1";
  std::string s;
  for (const auto &[g, e] : w) {
    if (!s.empty())
      s += " ";
    s += "g" + std::to_string(g + 1);
    if (e != 1)
      s += "^" + e.get_str();
  }
  return s;
}

ordered_json gen_exp_json(const GenExpWord &w) {
  ordered_json out = ordered_json::array();
  for (const auto &[g, e] : w)
    out.push_back({g, e.get_str()});
  return out;
}

ordered_json factor_json(const AbelianFactorStructure &f) {
  ordered_json torsion = ordered_json::array();
  for (const auto &t : f.torsion)
    torsion.push_back(t.get_str());
  return {{"weight", f.weight},
          {"free_rank", f.free_rank},
          {"torsion", torsion},
          {"generators", f.generators},
          {"text", f.to_string()}};
}

ordered_json order_json(const ElementOrder &o) {
  return o.finite ? ordered_json(o.value.get_str()) : ordered_json("infinite");
}

void print_factor_table(std::ostream &out, const NilpotentPresentation &np) {
  out << "weight  gens  factor\n";
  for (const auto &f : factor_structures(np))
    out << std::setw(6) << f.weight << "  " << std::setw(4) << f.generators << "  "
        << f.to_string() << "\n";
}

struct Context {
  std::ostream &out;
  bool json = false;

  void emit(const ordered_json &j) { out << j.dump(2) << "\n"; }
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact computations in finitely presented groups", "nqkit"};
  app.require_subcommand(1);
  Context ctx{out};
  app.add_flag("--json", ctx.json, "structured output");

  int status = ok;
  std::function<void()> action;

  // nq
  {
    auto *cmd = app.add_subcommand("nq", "nilpotent quotient: pc presentation and factors");
    auto src = std::make_shared<PresentationSource>();
    auto budget = std::make_shared<Budget>();
    auto c = std::make_shared<unsigned>(1);
    src->add_to(cmd);
    budget->add_to(cmd);
    cmd->add_option("--class", *c, "nilpotency class")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, src, budget, c] {
      action = [&, src, budget, c] {
        const Presentation pres = src->load();
        const NilpotentPresentation np = nilpotent_quotient(pres, *c, budget->options);
        const PcPresentation &pc = np.pc();
        if (ctx.json) {
          ordered_json gens = ordered_json::array();
          for (std::size_t g = 0; g < np.size(); ++g)
            gens.push_back({{"index", g},
                            {"weight", pc.weights[g]},
                            {"relative_order", pc.finite(g)
                                                   ? ordered_json(pc.relative_orders[g].get_str())
                                                   : ordered_json(nullptr)},
                            {"power", gen_exp_json(pc.powers[g])},
                            {"definition", np.definition_text(g)}});
          ordered_json epi = ordered_json::array();
          for (std::size_t s = 0; s < pres.alphabet()->size(); ++s)
            epi.push_back({{"generator", pres.alphabet()->name(s)},
                           {"image", gen_exp_json(np.epimorphism()[s])}});
          ordered_json factors = ordered_json::array();
          for (const auto &f : factor_structures(np))
            factors.push_back(factor_json(f));
          ctx.emit({{"class", np.nilpotency_class()},
                    {"size", np.size()},
                    {"generators", gens},
                    {"epimorphism", epi},
                    {"factors", factors}});
          return;
        }
        out << "class " << np.nilpotency_class() << ", " << np.size() << " pc generators\n";
        for (std::size_t g = 0; g < np.size(); ++g) {
          out << "  g" << g + 1 << "  weight " << pc.weights[g] << "  "
              << np.definition_text(g);
          if (pc.finite(g))
            out << "  order " << pc.relative_orders[g].get_str() << "  g" << g + 1 << "^"
                << pc.relative_orders[g].get_str() << " = " << gen_exp_text(pc.powers[g]);
          out << "\n";
        }
        for (std::size_t s = 0; s < pres.alphabet()->size(); ++s)
          out << "  " << pres.alphabet()->name(s) << " -> " << gen_exp_text(np.epimorphism()[s])
              << "\n";
        print_factor_table(out, np);
      };
    });
  }

  // order
  {
    auto *cmd = app.add_subcommand("order", "exact order of a word in a nilpotent quotient");
    auto src = std::make_shared<PresentationSource>();
    auto budget = std::make_shared<Budget>();
    auto c = std::make_shared<unsigned>(1);
    auto word = std::make_shared<std::string>();
    src->add_to(cmd);
    budget->add_to(cmd);
    cmd->add_option("--class", *c, "nilpotency class")->required();
    cmd->add_option("--word", *word, "word expression")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, src, budget, c, word] {
      action = [&, src, budget, c, word] {
        const Presentation pres = src->load();
        const Word w = parse_word(*word, pres.alphabet());
        const NilpotentPresentation np = nilpotent_quotient(pres, *c, budget->options);
        const ExponentVector v = np.image(w);
        const ElementOrder o = element_order(np, v);
        if (ctx.json)
          ctx.emit({{"word", *word},
                    {"class", np.nilpotency_class()},
                    {"image", gen_exp_json(to_gen_exp(v))},
                    {"order", order_json(o)}});
        else
          out << "order " << o.to_string() << " (image " << gen_exp_text(to_gen_exp(v))
              << ", class " << np.nilpotency_class() << ")\n";
      };
    });
  }

  // lcs
  {
    auto *cmd = app.add_subcommand("lcs", "lower central factors gamma_k/gamma_{k+1}");
    auto src = std::make_shared<PresentationSource>();
    auto budget = std::make_shared<Budget>();
    auto c = std::make_shared<unsigned>(1);
    src->add_to(cmd);
    budget->add_to(cmd);
    cmd->add_option("--class", *c, "nilpotency class")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, src, budget, c] {
      action = [&, src, budget, c] {
        const NilpotentPresentation np = nilpotent_quotient(src->load(), *c, budget->options);
        if (ctx.json) {
          ordered_json factors = ordered_json::array();
          for (const auto &f : factor_structures(np))
            factors.push_back(factor_json(f));
          ctx.emit({{"class", np.nilpotency_class()}, {"factors", factors}});
        } else {
          print_factor_table(out, np);
        }
      };
    });
  }

  // probe
  {
    auto *cmd = app.add_subcommand("probe", "orders of a word across several classes");
    auto src = std::make_shared<PresentationSource>();
    auto budget = std::make_shared<Budget>();
    auto classes = std::make_shared<std::vector<unsigned>>();
    auto word = std::make_shared<std::string>();
    src->add_to(cmd);
    budget->add_to(cmd);
    cmd->add_option("--classes", *classes, "comma separated classes")
        ->required()
        ->delimiter(',');
    cmd->add_option("--word", *word, "word expression")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, src, budget, classes, word] {
      action = [&, src, budget, classes, word] {
        const Presentation pres = src->load();
        const Word w = parse_word(*word, pres.alphabet());
        const TorsionProbeReport r = torsion_probe(pres, w, *classes, budget->options);
        if (ctx.json) {
          ordered_json orders = ordered_json::array();
          for (const auto &o : r.orders) {
            ordered_json e = {{"class", o.nq_class}};
            switch (o.status) {
            case ClassOrder::Status::finite:
              e["status"] = "finite";
              e["order"] = o.order.get_str();
              break;
            case ClassOrder::Status::infinite:
              e["status"] = "infinite";
              break;
            case ClassOrder::Status::budget_exceeded:
              e["status"] = "budget_exceeded";
              e["error"] = o.error;
              break;
            }
            orders.push_back(e);
          }
          ctx.emit({{"word", *word},
                    {"orders", orders},
                    {"finite_everywhere", r.finite_everywhere},
                    {"power_of_two_everywhere", r.power_of_two_everywhere}});
          return;
        }
        for (const auto &o : r.orders) {
          out << "class " << o.nq_class << ": ";
          switch (o.status) {
          case ClassOrder::Status::finite:
            out << "order " << o.order.get_str();
            break;
          case ClassOrder::Status::infinite:
            out << "infinite";
            break;
          case ClassOrder::Status::budget_exceeded:
            out << "budget exceeded (" << o.error << ")";
            break;
          }
          out << "\n";
        }
        out << "powers of 2 everywhere: " << (r.power_of_two_everywhere ? "yes" : "no") << "\n";
      };
    });
  }

  // verify
  {
    auto *cmd = app.add_subcommand("verify", "check lhs = rhs in a nilpotent quotient");
    auto src = std::make_shared<PresentationSource>();
    auto budget = std::make_shared<Budget>();
    auto c = std::make_shared<unsigned>(1);
    auto lhs = std::make_shared<std::string>();
    auto rhs = std::make_shared<std::string>("1");
    auto script = std::make_shared<std::string>();
    src->add_to(cmd);
    budget->add_to(cmd);
    auto *copt = cmd->add_option("--class", *c, "nilpotency class");
    auto *lopt = cmd->add_option("--lhs", *lhs, "left side");
    cmd->add_option("--rhs", *rhs, "right side (default 1)");
    auto *sopt = cmd->add_option("--script", *script,
                                 "identity script: lines 'class | name | lhs | rhs'");
    sopt->excludes(lopt);
    lopt->needs(copt);
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, src, budget, c, lhs, rhs, script] {
      action = [&, src, budget, c, lhs, rhs, script] {
        const Presentation pres = src->load();
        std::vector<IdentityCheck> checks;
        if (!script->empty())
          checks = read_identity_script(*script);
        else if (!lhs->empty())
          checks.push_back({*c, "identity", *lhs, *rhs});
        else
          throw DomainError("give --lhs or --script");

        // One quotient at the largest class; smaller ones by truncation.
        unsigned top = 0;
        for (const auto &chk : checks)
          top = std::max(top, chk.nq_class);
        const NilpotentPresentation np = nilpotent_quotient(pres, top, budget->options);
        ordered_json results = ordered_json::array();
        bool all = true;
        for (const auto &chk : checks) {
          const bool holds = verify_identity(np.truncated(chk.nq_class),
                                             parse_word(chk.lhs, pres.alphabet()),
                                             parse_word(chk.rhs, pres.alphabet()));
          all = all && holds;
          if (ctx.json)
            results.push_back({{"name", chk.name},
                               {"class", chk.nq_class},
                               {"lhs", chk.lhs},
                               {"rhs", chk.rhs},
                               {"holds", holds}});
          else
            out << (holds ? "holds  " : "FAILS  ") << chk.name << " (class " << chk.nq_class
                << ")\n";
        }
        if (ctx.json)
          ctx.emit({{"checks", results}, {"all_hold", all}});
        if (!all)
          status = check_failed;
      };
    });
  }

  // labute
  {
    auto *cmd = app.add_subcommand("labute", "leading Lie element and primitivity");
    auto gens = std::make_shared<std::string>();
    auto word = std::make_shared<std::string>();
    auto cap = std::make_shared<unsigned>(8);
    cmd->add_option("--gens", *gens, "generator names or count")->required();
    cmd->add_option("--word", *word, "word expression")->required();
    cmd->add_option("--cap", *cap, "degree cap");
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, gens, word, cap] {
      action = [&, gens, word, cap] {
        const AlphabetPtr alphabet = alphabet_from(*gens);
        const Word w = parse_word(*word, alphabet);
        const LabuteReport r = labute_hypothesis(w, *cap);
        const LieElement lie = leading_lie(w, *cap);
        if (ctx.json) {
          ordered_json coords = ordered_json::object();
          for (const auto &[m, e] : lie.coords)
            coords[monomial_to_string(m, *alphabet)] = e.get_str();
          ctx.emit({{"word", *word},
                    {"weight", r.weight},
                    {"gcd", r.gcd.get_str()},
                    {"primitive", r.primitive},
                    {"lyndon_coords", coords}});
          return;
        }
        out << "weight " << r.weight << ", gcd " << r.gcd.get_str() << ", "
            << (r.primitive ? "primitive" : "proper multiple") << "\n";
        for (const auto &[m, e] : lie.coords)
          out << "  " << e.get_str() << " * " << monomial_to_string(m, *alphabet) << "\n";
      };
    });
  }

  // basic
  {
    auto *cmd = app.add_subcommand("basic", "basic commutators up to a weight");
    auto gens = std::make_shared<std::string>();
    auto maxw = std::make_shared<unsigned>(1);
    cmd->add_option("--gens", *gens, "generator names or count")->required();
    cmd->add_option("--max-weight", *maxw, "largest weight")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, gens, maxw] {
      action = [&, gens, maxw] {
        const BasicSequence seq = basic_sequence(alphabet_from(*gens), *maxw);
        if (ctx.json) {
          ordered_json items = ordered_json::array();
          for (std::size_t i = 0; i < seq.size(); ++i)
            items.push_back({{"index", i},
                             {"weight", seq[i].weight},
                             {"bracket", seq.to_string(i)},
                             {"expansion", seq.expand(i).to_string()}});
          ctx.emit({{"count", seq.size()}, {"commutators", items}});
          return;
        }
        for (std::size_t i = 0; i < seq.size(); ++i)
          out << std::setw(4) << i + 1 << "  weight " << seq[i].weight << "  "
              << seq.to_string(i) << "\n";
      };
    });
  }

  // witt
  {
    auto *cmd = app.add_subcommand("witt", "rank of the weight-n free Lie ring component");
    auto q = std::make_shared<unsigned>(1);
    auto n = std::make_shared<unsigned>(1);
    cmd->add_option("--gens", *q, "number of generators")->required();
    cmd->add_option("--n", *n, "weight")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, q, n] {
      action = [&, q, n] {
        const Integer r = witt_number(*q, *n);
        if (ctx.json)
          ctx.emit({{"gens", *q}, {"n", *n}, {"witt", r.get_str()}});
        else
          out << r.get_str() << "\n";
      };
    });
  }

  // hydra-nf
  {
    auto *cmd = app.add_subcommand("hydra-nf", "normal form h t^n in a Hydra group");
    auto k = std::make_shared<unsigned>(1);
    auto word = std::make_shared<std::string>();
    cmd->add_option("--k", *k, "Hydra parameter")->required();
    cmd->add_option("--word", *word, "word over a, t")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, k, word] {
      action = [&, k, word] {
        const HydraNormalForm nf = hydra_normal_form(*k, parse_word(*word, hydra_ambient()));
        if (ctx.json)
          ctx.emit({{"k", *k},
                    {"h", nf.h.to_string()},
                    {"t_exp", nf.t_exp.get_str()},
                    {"trivial", nf.is_identity()}});
        else
          out << nf.to_string() << (nf.is_identity() ? "  (trivial)" : "") << "\n";
      };
    });
  }

  // hydra-rewrite
  {
    auto *cmd = app.add_subcommand("hydra-rewrite",
                                   "[a,t^(k-2),e^(l)] over c_1..c_k, e = [a,t^(k-1)]");
    auto k = std::make_shared<unsigned>(2);
    auto l = std::make_shared<unsigned>(1);
    cmd->add_option("--k", *k, "Hydra parameter")->required();
    cmd->add_option("--l", *l, "copies of e")->required();
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, k, l] {
      action = [&, k, l] {
        const Word w = rewrite_in_c(*k, *l);
        std::vector<Word> args{Word::generator(w.alphabet(), *k - 2)};
        for (unsigned i = 0; i < *l; ++i)
          args.push_back(Word::generator(w.alphabet(), *k - 1));
        const bool basic_form = w == left_normed_commutator(args);
        if (ctx.json)
          ctx.emit({{"k", *k},
                    {"l", *l},
                    {"word", w.to_string()},
                    {"equals_left_normed", basic_form}});
        else
          out << w.to_string() << "\n"
              << (basic_form ? "= " : "!= ") << "[c_" << *k - 1 << ", c_" << *k << " x " << *l
              << "]\n";
      };
    });
  }

  // hall-witt-check
  {
    auto *cmd = app.add_subcommand("hall-witt-check",
                                   "[A,B^-1,C]^B [B,C^-1,A]^C [C,A^-1,B]^A = 1");
    auto src = std::make_shared<PresentationSource>();
    auto budget = std::make_shared<Budget>();
    auto c = std::make_shared<unsigned>(0);
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto cc = std::make_shared<std::string>();
    src->add_to(cmd);
    budget->add_to(cmd);
    cmd->add_option("--A", *a, "first word")->required();
    cmd->add_option("--B", *b, "second word")->required();
    cmd->add_option("--C", *cc, "third word")->required();
    cmd->add_option("--class", *c, "also check in this nilpotent quotient");
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, src, budget, c, a, b, cc] {
      action = [&, src, budget, c, a, b, cc] {
        const Presentation pres = src->load();
        const Word hw = hall_witt_word(parse_word(*a, pres.alphabet()),
                                       parse_word(*b, pres.alphabet()),
                                       parse_word(*cc, pres.alphabet()));
        const bool free_ok = hw.is_identity();
        std::optional<bool> quotient_ok;
        if (*c > 0)
          quotient_ok = verify_identity(pres, *c, hw, Word(pres.alphabet()), budget->options);
        if (ctx.json) {
          ordered_json j = {{"free_reduction", hw.to_string()}, {"free_identity", free_ok}};
          if (quotient_ok)
            j["quotient_identity"] = *quotient_ok;
          ctx.emit(j);
        } else {
          out << "free reduction: " << hw.to_string() << "\n";
          if (quotient_ok)
            out << "in class-" << *c << " quotient: " << (*quotient_ok ? "trivial" : "NONTRIVIAL")
                << "\n";
        }
        if (!free_ok || (quotient_ok && !*quotient_ok))
          status = check_failed;
      };
    });
  }

  // fixtures
  {
    auto *cmd = app.add_subcommand("fixtures", "list built-in presentations");
    auto name = std::make_shared<std::string>();
    cmd->add_option("--show", *name, "print one presentation");
    cmd->add_flag("--json", ctx.json, "structured output");
    cmd->callback([&, name] {
      action = [&, name] {
        if (!name->empty()) {
          const Fixture &f = fixture(*name);
          if (ctx.json)
            ctx.emit({{"name", f.name}, {"description", f.description}, {"text", f.text}});
          else
            out << f.text;
          return;
        }
        if (ctx.json) {
          ordered_json items = ordered_json::array();
          for (const auto &f : fixtures())
            items.push_back({{"name", f.name}, {"description", f.description}});
          ctx.emit(items);
          return;
        }
        for (const auto &f : fixtures())
          out << std::left << std::setw(20) << f.name << f.description << "\n";
      };
    });
  }

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return parse_error;
  }

  try {
    action();
    return status;
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return parse_error;
  } catch (const UnknownGenerator &e) {
    err << "parse error: " << e.what() << "\n";
    return parse_error;
  } catch (const BudgetExceeded &e) {
    err << "budget exceeded: " << e.what() << "\n";
    return budget_exceeded;
  } catch (const InternalError &e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return error;
  }
}

} // namespace nqkit::cli
