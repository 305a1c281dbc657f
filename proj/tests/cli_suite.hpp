#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "framelab/cli/commands.hpp"

#ifndef FRAMELAB_FIXTURE_DIR
#error "FRAMELAB_FIXTURE_DIR must be defined"
#endif

namespace cli_suite {

inline std::string fixture(const std::string& name) {
  return std::string(FRAMELAB_FIXTURE_DIR) + "/" + name;
}

// One invocation per command, seed 0 wherever functions are generated.
inline std::vector<std::vector<std::string>> invocations() {
  const auto prop = fixture("point_plus_half.json");
  const auto two = fixture("two_atoms.json");
  const auto ec = fixture("examplecase.json");
  return {
      {"moments", "--measure", fixture("cantor.json"), "--order", "8"},
      {"aux", "--measure", two, "--order", "6"},
      {"effective", "--measure", two, "--orders", "4,16,64", "--seed", "0", "--count", "20"},
      {"effective", "--measure", fixture("cantor.json"), "--function", fixture("e1.json"), "--orders",
       "32,64,128"},
      {"dextrodual", "build", "--measure", prop, "--parseval"},
      {"dextrodual", "bounds", "--measure", prop, "--parseval"},
      {"dextrodual", "coeffs", "--measure", prop, "--parseval", "--seed", "0", "--count", "3", "--order",
       "8"},
      {"dextrodual", "reconstruct", "--measure", prop, "--parseval", "--function", fixture("chi_upper.json"),
       "--orders", "64,256,1024"},
      {"witness", "--measure", fixture("lebesgue_plus_atom.json"), "--atom", "0.25", "--orders", "8,64"},
      {"examplecase", "build", "--measure", ec, "--truncation", "256", "--order", "64"},
      {"examplecase", "coeffs", "--measure", ec, "--seed", "0", "--count", "2", "--order", "6"},
      {"examplecase", "check", "--measure", ec, "--function", fixture("examplecase_indicator.json"),
       "--orders", "16,64"},
      {"examplecase", "reconstruct", "--measure", ec, "--seed", "0", "--count", "2", "--orders", "16,64"},
      {"realline", "periodize", "--measure", fixture("real_two.json"), "--period", "1"},
      {"realline", "lattice", "--measure", fixture("real_two.json"), "--values", fixture("real_linear.json"),
       "--orders", "4,16"},
      {"realline", "double", "--measure", fixture("real_two.json"), "--values", fixture("real_linear.json"),
       "--N", "8", "--M", "16"},
      {"realline", "weighted", "--weights", "geometric:0.5", "--coeffs", "geometric:0.5", "--last", "10"},
      {"hardy", "cauchy", "--measure", prop, "--seed", "0", "--count", "2", "--order", "6"},
      {"hardy", "vmu", "--measure", two, "--function", fixture("plus_minus.json"), "--order", "6",
       "--format", "json"},
      {"hardy", "boundary", "--measure", prop, "--parseval", "--function", fixture("chi_upper.json"),
       "--order", "256"},
      {"hardy", "kernel", "--family", "repeated", "--dim", "8", "--w", "0.25,0:0.3", "--z", "0.5"},
      {"hardy", "shift", "--family", "orbit", "--dim", "5"},
      {"hardy", "shift", "--family", "repeated", "--dim", "8", "--format", "json"},
  };
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

inline Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = framelab::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

// Concatenated outputs of the whole suite; nonzero exits are recorded inline.
inline std::string run_all() {
  std::string all;
  for (const auto& args : invocations()) {
    const auto o = run(args);
    all += "## " + args[0] + " exit " + std::to_string(o.code) + "\n" + o.out;
  }
  return all;
}

}  // namespace cli_suite
