#include "interlock/export.hpp"

#include <ostream>
#include <string>

#include "interlock/csv.hpp"

namespace interlock {

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void graphml_header(std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
         "    xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
         "    xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
}

std::string node_key(NodeKind kind, const std::string& id) {
  return std::string(to_string(kind)) + ":" + id;
}

}  // namespace

void write_graphml(std::ostream& out, const ProjectionGraph& projection) {
  const auto mode = std::string(to_string(projection.mode()));
  graphml_header(out);
  out << "  <key id=\"mode\" for=\"node\" attr.name=\"mode\" attr.type=\"string\"/>\n"
         "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
         "  <key id=\"shared\" for=\"edge\" attr.name=\"shared\" attr.type=\"string\"/>\n"
      << "  <graph id=\"" << mode << "_projection\" edgedefault=\"undirected\">\n";
  for (const auto& id : projection.ids()) {
    out << "    <node id=\"" << xml_escape(id) << "\"><data key=\"mode\">" << mode
        << "</data></node>\n";
  }
  for (const auto& e : projection.edges()) {
    out << "    <edge source=\"" << xml_escape(projection.id(e.u)) << "\" target=\""
        << xml_escape(projection.id(e.v)) << "\"><data key=\"weight\">" << e.weight()
        << "</data><data key=\"shared\">" << xml_escape(join(e.shared, ";"))
        << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_graphml(std::ostream& out, const CorporateGraph& graph) {
  graphml_header(out);
  out << "  <key id=\"mode\" for=\"node\" attr.name=\"mode\" attr.type=\"string\"/>\n"
         "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
         "  <graph id=\"company_director\" edgedefault=\"undirected\">\n";
  for (NodeKind kind : {NodeKind::company, NodeKind::director}) {
    for (NodeIndex i = 0; i < graph.size(kind); ++i) {
      out << "    <node id=\"" << xml_escape(node_key(kind, graph.id(kind, i)))
          << "\"><data key=\"mode\">" << to_string(kind) << "</data><data key=\"name\">"
          << xml_escape(graph.name(kind, i)) << "</data></node>\n";
    }
  }
  for (NodeIndex c = 0; c < graph.size(NodeKind::company); ++c) {
    for (NodeIndex d : graph.neighbors(NodeKind::company, c)) {
      out << "    <edge source=\"" << xml_escape(node_key(NodeKind::company, graph.id(NodeKind::company, c)))
          << "\" target=\"" << xml_escape(node_key(NodeKind::director, graph.id(NodeKind::director, d)))
          << "\"/>\n";
    }
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const ProjectionGraph& projection) {
  const auto mode = std::string(to_string(projection.mode()));
  out << "graph " << mode << "_projection {\n";
  for (const auto& id : projection.ids()) {
    out << "  " << dot_quote(id) << " [mode=" << mode << "];\n";
  }
  for (const auto& e : projection.edges()) {
    out << "  " << dot_quote(projection.id(e.u)) << " -- " << dot_quote(projection.id(e.v))
        << " [weight=" << e.weight() << ", shared=" << dot_quote(join(e.shared, ";")) << "];\n";
  }
  out << "}\n";
}

void write_dot(std::ostream& out, const CorporateGraph& graph) {
  out << "graph company_director {\n";
  for (NodeKind kind : {NodeKind::company, NodeKind::director}) {
    const char* shape = kind == NodeKind::company ? "box" : "ellipse";
    for (NodeIndex i = 0; i < graph.size(kind); ++i) {
      out << "  " << dot_quote(node_key(kind, graph.id(kind, i))) << " [mode=" << to_string(kind)
          << ", label=" << dot_quote(graph.id(kind, i)) << ", name=" << dot_quote(graph.name(kind, i))
          << ", shape=" << shape << "];\n";
    }
  }
  for (NodeIndex c = 0; c < graph.size(NodeKind::company); ++c) {
    for (NodeIndex d : graph.neighbors(NodeKind::company, c)) {
      out << "  " << dot_quote(node_key(NodeKind::company, graph.id(NodeKind::company, c)))
          << " -- " << dot_quote(node_key(NodeKind::director, graph.id(NodeKind::director, d)))
          << ";\n";
    }
  }
  out << "}\n";
}

void write_projection_csv(std::ostream& out, const ProjectionGraph& projection) {
  csv::write_row(out, {"u", "v", "weight", "shared"});
  for (const auto& e : projection.edges()) {
    csv::write_row(out, {projection.id(e.u), projection.id(e.v), std::to_string(e.weight()),
                         join(e.shared, ";")});
  }
}

void write_path_table_csv(std::ostream& out, std::span<const IndirectConnection> connections) {
  csv::write_row(out, {"u", "v", "degree", "path_count", "truncated"});
  for (const auto& c : connections) {
    csv::write_row(out, {c.u, c.v, std::to_string(c.connection_degree),
                         std::to_string(c.path_count), c.truncated ? "true" : "false"});
  }
}

void write_path_list_csv(std::ostream& out, std::span<const IndirectConnection> connections) {
  csv::write_row(out, {"u", "v", "path"});
  for (const auto& c : connections) {
    for (const auto& p : c.paths) csv::write_row(out, {c.u, c.v, join(p, " -> ")});
  }
}

}  // namespace interlock
