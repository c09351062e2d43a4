#include "epiflat/edge_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "epiflat/error.hpp"

namespace epiflat {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  NodeId node_count = 0;
  bool have_header = false;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    if (!have_header) {
      std::string tag;
      if (!(fields >> tag)) continue;  // leading blank line
      unsigned long long count = 0;
      std::string extra;
      if (tag != "n" || !(fields >> count) || (fields >> extra)) {
        parse_fail(line_no, "expected header 'n <node_count>'");
      }
      node_count = static_cast<NodeId>(count);
      have_header = true;
      continue;
    }
    unsigned long long u = 0, v = 0;
    std::string extra;
    if (!(fields >> u)) continue;  // blank line
    if (!(fields >> v) || (fields >> extra)) {
      parse_fail(line_no, "expected edge '<u> <v>'");
    }
    if (u >= node_count || v >= node_count) {
      throw Error(ErrorCode::OutOfRange, "line " + std::to_string(line_no) + ": endpoint exceeds node count " +
                                             std::to_string(node_count));
    }
    if (u == v) {
      throw Error(ErrorCode::SelfLoop, "line " + std::to_string(line_no) + ": self loop at node " + std::to_string(u));
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  if (!have_header) parse_fail(line_no == 0 ? 1 : line_no, "missing 'n <node_count>' header");
  return Graph::build(node_count, edges);
}

void format_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.node_count() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
  return parse_edge_list(in);
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  format_edge_list(g, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace epiflat
