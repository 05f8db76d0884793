#include "rfkit/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rfkit/errors.hpp"

namespace rfkit {

namespace {

const char* kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::Resistor: return "resistor";
        case ElementKind::Inductor: return "inductor";
        case ElementKind::Capacitor: return "capacitor";
        case ElementKind::Inverter: return "inverter";
    }
    return "?";
}

} // namespace

void validate_netlist(const Netlist& netlist) {
    if (netlist.node_count < 1) {
        throw config_error("netlist: node_count must be >= 1");
    }
    for (size_t i = 0; i < netlist.elements.size(); ++i) {
        const Element& e = netlist.elements[i];
        if (!std::isfinite(e.value) || e.value <= 0.0) {
            throw config_error("netlist: element " + std::to_string(i) + " (" +
                               kind_name(e.kind) + ") has non-positive value " +
                               std::to_string(e.value));
        }
        for (int node : {e.node_a, e.node_b}) {
            if (node < 0 || node > netlist.node_count) {
                throw config_error("netlist: element " + std::to_string(i) +
                                   " references node " + std::to_string(node) +
                                   " outside 0.." + std::to_string(netlist.node_count));
            }
        }
        if (e.node_a == e.node_b) {
            throw config_error("netlist: element " + std::to_string(i) +
                               " has coincident terminals");
        }
        if (e.kind == ElementKind::Inverter && (e.node_a == 0 || e.node_b == 0)) {
            throw config_error("netlist: element " + std::to_string(i) +
                               " is an inverter to ground");
        }
    }
    for (const Port& p : netlist.ports) {
        if (p.node < 1 || p.node > netlist.node_count) {
            throw config_error("netlist: port node " + std::to_string(p.node) +
                               " does not exist");
        }
        detail::require_positive(p.z_ref, "port z_ref");
    }
    if (netlist.ports[0].node == netlist.ports[1].node) {
        throw config_error("netlist: port nodes must be distinct");
    }

    // the two ports must lie in one connected component
    std::vector<std::vector<int>> adjacency(static_cast<size_t>(netlist.node_count) + 1);
    for (const Element& e : netlist.elements) {
        if (e.node_a > 0 && e.node_b > 0) {
            adjacency[e.node_a].push_back(e.node_b);
            adjacency[e.node_b].push_back(e.node_a);
        }
    }
    std::vector<char> seen(static_cast<size_t>(netlist.node_count) + 1, 0);
    std::vector<int> stack{netlist.ports[0].node};
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        if (seen[node]) continue;
        seen[node] = 1;
        for (int next : adjacency[node]) {
            if (!seen[next]) stack.push_back(next);
        }
    }
    if (!seen[netlist.ports[1].node]) {
        throw config_error("netlist: no element path between the port nodes");
    }
}

std::vector<int> port_connected_nodes(const Netlist& netlist) {
    std::vector<std::vector<int>> adjacency(static_cast<size_t>(netlist.node_count) + 1);
    for (const Element& e : netlist.elements) {
        if (e.node_a > 0 && e.node_b > 0) {
            adjacency[e.node_a].push_back(e.node_b);
            adjacency[e.node_b].push_back(e.node_a);
        }
    }
    std::vector<char> seen(static_cast<size_t>(netlist.node_count) + 1, 0);
    std::vector<int> stack;
    for (const Port& p : netlist.ports) {
        if (p.node >= 1 && p.node <= netlist.node_count) stack.push_back(p.node);
    }
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        if (seen[node]) continue;
        seen[node] = 1;
        for (int next : adjacency[node]) {
            if (!seen[next]) stack.push_back(next);
        }
    }
    std::vector<int> live;
    for (int node = 1; node <= netlist.node_count; ++node) {
        if (seen[node]) live.push_back(node);
    }
    return live;
}

} // namespace rfkit
