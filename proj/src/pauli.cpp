#include "gsent/pauli.hpp"

#include "gsent/errors.hpp"

namespace gsent {

PauliString parse_pauli_string(std::string_view s) {
    PauliString p;
    p.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case 'I': case 'i': p.push_back(Pauli::I); break;
            case 'X': case 'x': p.push_back(Pauli::X); break;
            case 'Y': case 'y': p.push_back(Pauli::Y); break;
            case 'Z': case 'z': p.push_back(Pauli::Z); break;
            default:
                throw InputError(std::string("pauli string: invalid letter '") + c + "'");
        }
    }
    return p;
}

std::string to_string(const PauliString& p) {
    static const char letters[] = "IXYZ";
    std::string s;
    s.reserve(p.size());
    for (Pauli l : p) s.push_back(letters[static_cast<int>(l)]);
    return s;
}

BitVec z_image(const Graph& graph, const PauliString& p) {
    const int n = graph.vertex_count();
    if (static_cast<int>(p.size()) != n)
        throw InputError("z_image: pauli string length " + std::to_string(p.size()) +
                         " does not match vertex count " + std::to_string(n));
    BitVec out(n);
    for (int k = 0; k < n; ++k) {
        switch (p[k]) {
            case Pauli::I:
                break;
            case Pauli::X:
                out ^= graph.neighbor_mask(k);
                break;
            case Pauli::Y:
                out ^= graph.neighbor_mask(k);
                out.flip(k);
                break;
            case Pauli::Z:
                out.flip(k);
                break;
        }
    }
    return out;
}

std::uint64_t z_image_on_support(const Graph& graph, int qubit, Pauli letter,
                                 std::span<const int> support) {
    std::uint64_t key = 0;
    if (letter == Pauli::I) return key;
    const BitVec& nb = graph.neighbor_mask(qubit);
    for (std::size_t i = 0; i < support.size(); ++i) {
        const int v = support[i];
        bool bit = false;
        if (letter == Pauli::X)
            bit = nb.get(v);
        else if (letter == Pauli::Y)
            bit = nb.get(v) != (v == qubit);
        else  // Z
            bit = (v == qubit);
        if (bit) key |= std::uint64_t{1} << i;
    }
    return key;
}

}  // namespace gsent
