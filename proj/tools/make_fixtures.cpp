// make_fixtures - regenerates the committed golden files under tests/fixtures/.
// Run after any deliberate change to the generator contract, then review the diff.
#include <iostream>
#include <string>

#include "gtlab/suites.hpp"

using namespace gtlab;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gtlab-make-fixtures <fixtures-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];

  {
    RandomStream s = RandomStream::for_trial(42, 0, 0);
    write_file(dir + "/rand_hermitian_n3_seed42.json",
               matrix_to_json(rand_hermitian(3, 2.0, s).mat()));
  }
  {
    RandomStream s = RandomStream::for_trial(7, 0, 0);
    write_file(dir + "/rand_pd_n4_seed7.json", matrix_to_json(rand_pd(4, 100.0, s).mat()));
  }
  {
    RandomStream s = RandomStream::for_trial(9, 0, 0);
    ContractionTuple t = rand_contraction_tuple(3, 3, 2, true, s);
    std::string json = "{\"H\":[";
    for (int i = 0; i < t.k(); ++i) {
      if (i) json += ',';
      json += matrix_to_json(t.blocks()[static_cast<size_t>(i)]);
    }
    json += "]}";
    write_file(dir + "/contraction_k3_n3_m2_seed9.json", json);
  }
  {
    RunConfig cfg;
    cfg.seed = 11;
    cfg.n_max = 3;
    cfg.m_max = 3;
    cfg.k_max = 2;
    const double betas[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    write_file(dir + "/sweep_seed11.csv",
               sweep_to_csv(run_sweep(sweep_instance_for_seed(cfg), betas)));
  }
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
