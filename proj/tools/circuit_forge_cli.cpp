#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cforge/circuit.hpp"
#include "cforge/codec.hpp"
#include "cforge/compile.hpp"
#include "cforge/enumerate.hpp"
#include "cforge/errors.hpp"
#include "cforge/evaluate.hpp"
#include "cforge/evo.hpp"
#include "cforge/formula.hpp"
#include "cforge/gadgets.hpp"
#include "cforge/inverse.hpp"
#include "cforge/netlist.hpp"
#include "cforge/search.hpp"
#include "cforge/transforms.hpp"

namespace {

cforge::Circuit load_circuit(const std::string& path, bool check_valid = true) {
  std::ifstream in(path);
  if (!in) throw cforge::validation_error("cannot open circuit file: " + path);
  return cforge::parse_netlist(in, check_valid);
}

void emit_circuit(const cforge::Circuit& c, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << cforge::to_netlist(c);
  } else {
    std::ofstream out(out_path);
    if (!out) throw cforge::validation_error("cannot open output file: " + out_path);
    out << cforge::to_netlist(c);
  }
}

cforge::BitString read_code_argument(const std::string& bits, const std::string& file) {
  if (!bits.empty()) return cforge::BitString(bits);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw cforge::validation_error("cannot open code file: " + file);
  return cforge::read_ccode(in);
}

std::vector<std::uint32_t> resolve_vars(const cforge::Formula& f,
                                        const std::vector<std::string>& names) {
  std::vector<std::uint32_t> indices;
  for (const std::string& chunk : names) {
    std::istringstream ss(chunk);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      bool found = false;
      const auto& table = f.var_names();
      for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i] == name) {
          indices.push_back(static_cast<std::uint32_t>(i + 1));
          found = true;
          break;
        }
      if (!found)
        throw std::invalid_argument("variable '" + name + "' does not occur in the formula");
    }
  }
  return indices;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circuit-forge: boolean circuits, reduction gadgets, codecs and inverses"};
  app.require_subcommand(1);

  std::string circ_path, out_path, second_out;
  std::string formula_text, input_bits, code_bits, code_file, manifest_path, eval_bits;
  std::vector<std::string> x_names, y_names;
  std::uint32_t pad_wires = 0, pad_dangling = 0;
  std::uint32_t prof_m = 1, prof_n = 1, prof_size_cap = 5, prof_inverse_cap = 5;
  unsigned prof_jobs = 1;
  std::uint32_t invert_cap = 12;
  bool check_valid = false, check_injective = false, check_surjective = false,
       check_identity = false;
  bool norm_surjective = false, norm_lengthpreserving = false;

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a circuit on an input");
  cmd_eval->add_option("circuit", circ_path, ".circ netlist")->required();
  cmd_eval->add_option("--input", input_bits, "input bits, e.g. 1010")->required();
  cmd_eval->callback([&] {
    std::cout << cforge::evaluate(load_circuit(circ_path), cforge::BitString(input_bits)).str()
              << "\n";
  });

  auto* cmd_table = app.add_subcommand("table", "print the full function table");
  cmd_table->add_option("circuit", circ_path, ".circ netlist")->required();
  cmd_table->callback([&] {
    cforge::Circuit c = load_circuit(circ_path);
    cforge::FunctionTable t = cforge::function_table(c);
    for (std::uint64_t x = 0; x < t.domain_span(); ++x)
      std::cout << cforge::BitString::from_index(x, c.m).str() << " "
                << cforge::BitString::from_index(t.value(x), c.n).str() << "\n";
  });

  auto* cmd_check = app.add_subcommand("check", "exhaustive semantic property checks");
  cmd_check->add_option("circuit", circ_path, ".circ netlist")->required();
  cmd_check->add_flag("--valid", check_valid, "check the structural invariants");
  cmd_check->add_flag("--injective", check_injective, "exhaustive injectivity");
  cmd_check->add_flag("--surjective", check_surjective, "exhaustive surjectivity");
  cmd_check->add_flag("--identity", check_identity, "exhaustive identity check");
  cmd_check->callback([&] {
    const int picked = check_valid + check_injective + check_surjective + check_identity;
    if (picked != 1)
      throw CLI::ValidationError("check", "pick exactly one of --valid/--injective/--surjective/--identity");
    if (check_valid) {
      cforge::Circuit c = load_circuit(circ_path, false);
      cforge::ValidationReport r = cforge::validate(c);
      if (!r.ok()) std::cerr << r.summary() << "\n";
      std::cout << (r.ok() ? "true" : "false") << "\n";
      return;
    }
    cforge::Circuit c = load_circuit(circ_path);
    bool value = false;
    if (check_injective) value = cforge::is_injective(c);
    if (check_surjective) value = cforge::is_surjective(c);
    if (check_identity) value = cforge::is_identity(c);
    std::cout << (value ? "true" : "false") << "\n";
  });

  auto* cmd_gadget = app.add_subcommand("gadget", "build a reduction gadget circuit");
  auto* gadget_inj = cmd_gadget->add_subcommand("inj", "tautology -> injectivity gadget F_B");
  gadget_inj->add_option("--formula", formula_text, "boolean formula over x<digits>")->required();
  gadget_inj->add_option("-o,--output", out_path, "write the netlist here instead of stdout");
  gadget_inj->callback([&] {
    emit_circuit(cforge::injectivity_gadget(cforge::parse_formula(formula_text)), out_path);
  });
  auto* gadget_surj = cmd_gadget->add_subcommand("surj", "forall-exists -> surjectivity gadget C_B");
  gadget_surj->add_option("--formula", formula_text, "boolean formula over x<digits>")->required();
  gadget_surj->add_option("--x", x_names, "existential block, comma separated names")->required();
  gadget_surj->add_option("--y", y_names, "universal block, comma separated names")->required();
  gadget_surj->add_option("-o,--output", out_path, "write the netlist here instead of stdout");
  gadget_surj->callback([&] {
    cforge::Formula b = cforge::parse_formula(formula_text);
    emit_circuit(cforge::surjectivity_gadget(b, resolve_vars(b, x_names), resolve_vars(b, y_names)),
                 out_path);
  });

  auto* cmd_compile = app.add_subcommand("compile", "compile a formula into a circuit");
  cmd_compile->add_option("--formula", formula_text, "boolean formula over x<digits>")->required();
  cmd_compile->add_option("-o,--output", out_path, "write the netlist here instead of stdout");
  cmd_compile->callback([&] {
    emit_circuit(cforge::compile_formula(cforge::parse_formula(formula_text)), out_path);
  });

  auto* cmd_pad = app.add_subcommand("pad", "identity-wire or dangling-input padding");
  cmd_pad->add_option("circuit", circ_path, ".circ netlist")->required();
  cmd_pad->add_option("--wires", pad_wires, "number of identity wires to append");
  cmd_pad->add_option("--dangling", pad_dangling, "number of dangling inputs to append");
  cmd_pad->add_option("-o,--output", out_path, "write the netlist here instead of stdout");
  cmd_pad->callback([&] {
    cforge::Circuit c = load_circuit(circ_path);
    if (pad_wires > 0) c = cforge::add_identity_wires(c, pad_wires).first;
    if (pad_dangling > 0) c = cforge::add_dangling_inputs(c, pad_dangling).first;
    emit_circuit(c, out_path);
  });

  auto* cmd_norm = app.add_subcommand("normalize", "arity/size normalization pipelines");
  cmd_norm->add_option("circuit", circ_path, ".circ netlist")->required();
  cmd_norm->add_flag("--surjective", norm_surjective, "land in the band 2n < m <= size <= 6n");
  cmd_norm->add_flag("--length-preserving", norm_lengthpreserving, "equalize arities, then pad");
  cmd_norm->add_option("-o,--output", out_path, "write C2 here instead of stdout");
  cmd_norm->add_option("--c1-out", second_out, "also write the intermediate C1");
  cmd_norm->callback([&] {
    if (norm_surjective == norm_lengthpreserving)
      throw CLI::ValidationError("normalize", "pick exactly one of --surjective/--length-preserving");
    cforge::Circuit c = load_circuit(circ_path);
    if (norm_surjective) {
      cforge::SurjectiveNormalization r = cforge::normalize_surjective(c);
      if (!second_out.empty()) emit_circuit(r.c1, second_out);
      emit_circuit(r.c2, out_path);
    } else {
      emit_circuit(cforge::normalize_lengthpreserving(c).c2, out_path);
    }
  });

  auto* cmd_encode = app.add_subcommand("encode", "bit-exact circuit code");
  cmd_encode->add_option("circuit", circ_path, ".circ netlist")->required();
  cmd_encode->add_option("-o,--output", out_path, "write a binary .ccode file instead of bit text");
  cmd_encode->callback([&] {
    cforge::Circuit c = load_circuit(circ_path);
    cforge::BitString bits = cforge::encode(c);
    if (out_path.empty()) {
      std::cout << bits.str() << "\n";
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw cforge::validation_error("cannot open output file: " + out_path);
      cforge::write_ccode(out, bits);
    }
  });

  auto* cmd_decode = app.add_subcommand("decode", "total decoding back to a circuit");
  cmd_decode->add_option("code", code_file, ".ccode file");
  cmd_decode->add_option("--bits", code_bits, "code given directly as 0/1 text");
  cmd_decode->add_option("-o,--output", out_path, "write the netlist here instead of stdout");
  cmd_decode->callback([&] {
    cforge::DecodeReport report;
    cforge::Circuit c = cforge::decode(read_code_argument(code_bits, code_file), &report);
    if (!report.strict) {
      std::cerr << "not a circuit code; falling back to identity_circuit("
                << report.fallback_m << ")";
      if (report.fallback_below_minimum) std::cerr << " (input below the smallest code)";
      std::cerr << "\n";
    }
    emit_circuit(c, out_path);
  });

  auto* cmd_ev = app.add_subcommand("ev", "universal evaluation ev(c, x)");
  cmd_ev->add_option("code", code_file, ".ccode file");
  cmd_ev->add_option("--bits", code_bits, "code given directly as 0/1 text");
  cmd_ev->add_option("--input", input_bits, "input bits")->required();
  cmd_ev->callback([&] {
    std::cout << cforge::ev(read_code_argument(code_bits, code_file),
                            cforge::BitString(input_bits))
                     .str()
              << "\n";
  });

  auto* cmd_evo = app.add_subcommand("evo", "length-preserving evaluation ev_o(c, x)");
  cmd_evo->add_option("code", code_file, ".ccode file");
  cmd_evo->add_option("--bits", code_bits, "code given directly as 0/1 text");
  cmd_evo->add_option("--input", input_bits, "input bits")->required();
  cmd_evo->callback([&] {
    auto [c, y] = cforge::ev_o(read_code_argument(code_bits, code_file),
                               cforge::BitString(input_bits));
    std::cout << c.str() << "\n" << y.str() << "\n";
  });

  auto* cmd_invert = app.add_subcommand("invert", "minimal semi-inverse circuit search");
  cmd_invert->add_option("circuit", circ_path, ".circ netlist")->required();
  cmd_invert->add_option("--cap", invert_cap, "largest inverse size to try (default 12)");
  cmd_invert->add_option("-o,--output", out_path, "write the inverse netlist here");
  cmd_invert->callback([&] {
    cforge::Circuit c = load_circuit(circ_path);
    auto result = cforge::min_inverse_circuit(c, invert_cap);
    if (!result) throw cforge::cap_error("no semi-inverse circuit within size cap " +
                                         std::to_string(invert_cap));
    std::cout << result->size << "\n";
    emit_circuit(result->circuit, out_path);
  });

  auto* cmd_profile = app.add_subcommand("profile", "inversion hardness profile as CSV");
  cmd_profile->add_option("--m", prof_m, "input arity")->required();
  cmd_profile->add_option("--n", prof_n, "output arity")->required();
  cmd_profile->add_option("--size-cap", prof_size_cap, "largest circuit size to survey")->required();
  cmd_profile->add_option("--inverse-cap", prof_inverse_cap, "largest inverse size to try")->required();
  cmd_profile->add_option("--jobs", prof_jobs, "worker threads; output identical for any value");
  cmd_profile->add_option("-o,--output", out_path, "write the CSV here instead of stdout");
  cmd_profile->callback([&] {
    cforge::HardnessProfile p =
        cforge::hardness_profile(prof_m, prof_n, prof_size_cap, prof_inverse_cap, prof_jobs);
    if (out_path.empty()) {
      cforge::write_profile_csv(std::cout, p);
    } else {
      std::ofstream out(out_path);
      if (!out) throw cforge::validation_error("cannot open output file: " + out_path);
      cforge::write_profile_csv(out, p);
    }
  });

  auto* cmd_inter = app.add_subcommand("interleave", "validate an interleaved family");
  cmd_inter->add_option("--manifest", manifest_path, "family manifest file")->required();
  cmd_inter->add_option("--eval", eval_bits, "evaluate the family on these bits");
  cmd_inter->callback([&] {
    cforge::InterleavedFamily fam = cforge::load_family_manifest(manifest_path);
    if (eval_bits.empty()) {
      std::cout << "ok\n";
      for (const cforge::FamilyMember& mem : fam.members)
        std::cout << mem.m << " " << mem.n << " " << mem.size << "\n";
    } else {
      std::cout << cforge::eval_interleaved(fam, cforge::BitString(eval_bits)).str() << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const cforge::cap_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
