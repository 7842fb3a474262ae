// Minimal library walkthrough: build a graph, extract a low-conductance
// cluster with both peeling strategies, and print what they found.
//
// Usage: peel_demo [edge_list_file]
// Without a file it runs on a built-in example: two triangles joined by one
// bridge edge, whose best cluster is either triangle (conductance 1/7).

#include <fstream>
#include <iostream>

#include "pcon/pcon.hpp"

int main(int argc, char** argv) {
  try {
    pcon::LabeledGraph lg;
    if (argc > 1) {
      std::ifstream in(argv[1]);
      if (!in) {
        std::cerr << "cannot open " << argv[1] << "\n";
        return 1;
      }
      lg = pcon::largest_component(pcon::parse_edge_list(in));
    } else {
      pcon::Graph g = pcon::Graph::from_edges(
          6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
      lg = {std::move(g), pcon::RelabelMap::identity(6)};
    }
    std::cout << "graph: n=" << lg.graph.vertex_count()
              << " m=" << lg.graph.edge_count() << "\n";

    for (auto run : {pcon::pcon_core, pcon::pcon_de}) {
      pcon::ClusterResult res = run(lg.graph);
      pcon::Ratio phi = pcon::reduced(res.cond);
      std::cout << res.method << ": conductance " << phi.num << "/" << phi.den
                << " (" << pcon::to_double(res.cond) << "), " << "members";
      for (pcon::VertexId v : res.members)
        std::cout << ' ' << lg.ids.original(v);
      std::cout << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
