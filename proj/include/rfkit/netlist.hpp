#pragma once

#include <array>
#include <vector>

namespace rfkit {

enum class ElementKind { Resistor, Inductor, Capacitor, Inverter };

/// Two-terminal element between nodes a and b; node 0 is ground.
/// Values are SI (Ohm, H, F) except Inverter, whose value is the
/// characteristic admittance J in Siemens.
struct Element {
    ElementKind kind;
    int node_a;
    int node_b;
    double value;
};

struct Port {
    int node;
    double z_ref;  // Ohm
};

/// Node/element/port graph. Nodes are 1..node_count; 0 is ground.
struct Netlist {
    int node_count = 0;
    std::vector<Element> elements;
    std::array<Port, 2> ports{};
};

/// Throws config_error/domain_error on: non-positive or non-finite element
/// values, node ids out of range, inverters touching ground, coincident or
/// missing port nodes, or a port with no path to the other port.
void validate_netlist(const Netlist& netlist);

/// Nodes reachable from either port through the element graph. Ground does
/// not conduct connectivity. Sorted ascending.
std::vector<int> port_connected_nodes(const Netlist& netlist);

} // namespace rfkit
