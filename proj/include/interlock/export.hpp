#pragma once

#include <iosfwd>
#include <span>

#include "interlock/graph.hpp"
#include "interlock/projection.hpp"

namespace interlock {

// GraphML with a node attribute "mode" and edge attributes "weight" and
// "shared" (semicolon-joined identifiers).
void write_graphml(std::ostream& out, const ProjectionGraph& projection);
// Two-mode graph. Node ids are "company:<cin>" / "director:<din>"; nodes
// carry "mode" and "name".
void write_graphml(std::ostream& out, const CorporateGraph& graph);

void write_dot(std::ostream& out, const ProjectionGraph& projection);
void write_dot(std::ostream& out, const CorporateGraph& graph);

// u,v,weight,shared
void write_projection_csv(std::ostream& out, const ProjectionGraph& projection);
// u,v,degree,path_count,truncated
void write_path_table_csv(std::ostream& out, std::span<const IndirectConnection> connections);
// u,v,path with the path written as "A -> 1 -> B"
void write_path_list_csv(std::ostream& out, std::span<const IndirectConnection> connections);

}  // namespace interlock
