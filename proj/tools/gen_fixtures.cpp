// Regenerates the JSON fixtures under tests/data: one good file holding the
// word-splitting triple with its free one-generator bialgebra, and five
// variants with a single corrupted entry each (law, multiplication,
// comultiplication, unit, coaction).  Output is canonical, so regeneration is
// byte-stable.

#include <fstream>
#include <iostream>
#include <string>

#include "entwine/builtin.hpp"
#include "entwine/rigidity.hpp"
#include "entwine/specfile.hpp"

using namespace entwine;

namespace {

void write(const std::string& dir, const std::string& name, const Json& doc) {
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(1);
  }
  out << doc.dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures OUTPUT_DIR\n";
    return 64;
  }
  const std::string dir = argv[1];
  PlethCache cache;

  const std::size_t N = 3;
  const Entwining e = builtin::build_infinitesimal(N, cache);
  const Bialgebra b = comparison_K(e, std::size_t{1}, N, cache);

  SpecFile spec;
  spec.max_arity = N;
  spec.sequences.emplace("words", e.op.carrier);
  spec.operads.emplace("concat", SpecFile::OperadEntry{"words", e.op});
  spec.cooperads.emplace("splits", SpecFile::CooperadEntry{"words", e.co});
  spec.entwinings.emplace("inf", SpecFile::EntwiningEntry{"concat", "splits", e});
  spec.bialgebras.emplace("tensor", SpecFile::BialgebraEntry{"inf", b});

  const Json good = spec_to_json(spec);
  write(dir, "good.json", good);

  // Each corruption touches exactly one serialized entry.
  Json bad_lambda = good;
  bad_lambda["entwinings"]["inf"]["lambda"][1][0][0] = "7";
  write(dir, "corrupt_lambda.json", bad_lambda);

  Json bad_mult = good;
  bad_mult["operads"]["concat"]["mult"][1][0][0] = "3";
  write(dir, "corrupt_mult.json", bad_mult);

  Json bad_comult = good;
  bad_comult["cooperads"]["splits"]["comult"][1][0][0] = "2";
  write(dir, "corrupt_comult.json", bad_comult);

  Json bad_unit = good;
  bad_unit["operads"]["concat"]["unit"][0][0][0] = "5";
  write(dir, "corrupt_unit.json", bad_unit);

  Json bad_theta = good;
  bad_theta["bialgebras"]["tensor"]["theta"][1][0][0] = "0";
  write(dir, "corrupt_theta.json", bad_theta);

  return 0;
}
