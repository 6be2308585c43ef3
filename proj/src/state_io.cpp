#include "qinv/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qinv/error.hpp"
#include "qinv/haar.hpp"

namespace qinv {

using nlohmann::json;

AlgebraElement parse_state_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("state file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("state file: top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("state file: field \"n\" must be an integer");
    const int n = doc["n"].get<int>();
    int d = 2;
    if (doc.contains("d")) {
        if (!doc["d"].is_number_integer()) throw ParseError("state file: field \"d\" must be an integer");
        d = doc["d"].get<int>();
    }
    if (n < 1 || n > 16) throw ParseError("state file: field \"n\" must lie in 1..16");
    if (d < 2 || d > 16) throw ParseError("state file: field \"d\" must lie in 2..16");
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
        throw ParseError("state file: field \"amplitudes\" must be an array");
    }
    const json& amps = doc["amplitudes"];
    const std::size_t expected = table_size(n, d);
    if (amps.size() != expected) {
        throw ParseError("state file: field \"amplitudes\" has " + std::to_string(amps.size()) +
                         " entries, expected d^n = " + std::to_string(expected));
    }
    std::vector<Complex> coeffs;
    coeffs.reserve(expected);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const json& pair = amps[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw ParseError("state file: amplitudes[" + std::to_string(i) + "] must be [re, im]");
        }
        const double re = pair[0].get<double>();
        const double im = pair[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw ParseError("state file: amplitudes[" + std::to_string(i) + "] is not finite");
        }
        coeffs.emplace_back(re, im);
    }
    return AlgebraElement(n, d, std::move(coeffs));
}

AlgebraElement parse_state(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open state file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_state_json(buffer.str());
}

std::string write_state_json(const AlgebraElement& state) {
    nlohmann::ordered_json doc;
    doc["n"] = state.sites();
    doc["d"] = state.dim();
    nlohmann::ordered_json amps = nlohmann::ordered_json::array();
    for (const Complex& c : state.coefficients()) amps.push_back({c.real(), c.imag()});
    doc["amplitudes"] = std::move(amps);
    return doc.dump();
}

void write_state(const AlgebraElement& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write state file " + path.string());
    out << write_state_json(state) << "\n";
}

std::string state_digest(const AlgebraElement& state) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : write_state_json(state)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

StateKind parse_state_kind(std::string_view text) {
    if (text == "random") return StateKind::Random;
    if (text == "bell") return StateKind::Bell;
    if (text == "ghz") return StateKind::Ghz;
    if (text == "w") return StateKind::W;
    if (text == "separable") return StateKind::Separable;
    throw ParseError("unknown state kind \"" + std::string(text) + "\" (random|bell|ghz|w|separable)");
}

std::string_view state_kind_name(StateKind kind) {
    switch (kind) {
        case StateKind::Random: return "random";
        case StateKind::Bell: return "bell";
        case StateKind::Ghz: return "ghz";
        case StateKind::W: return "w";
        case StateKind::Separable: return "separable";
    }
    return "unknown";
}

AlgebraElement random_state(int n, std::uint64_t seed) {
    if (n < 1 || n > 16) throw DomainError("random_state supports 1..16 qubits");
    SplitMix64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> coeffs(std::size_t{1} << n);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& c : coeffs) {
            const double re = normal(rng);
            const double im = normal(rng);
            c = Complex{re, im};
            norm2 += re * re + im * im;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : coeffs) c *= inv;
    return AlgebraElement(n, 2, std::move(coeffs));
}

AlgebraElement generate_state(StateKind kind, int n, std::uint64_t seed, const std::optional<SetPartition>& partition) {
    if (n < 1 || n > 16) throw DomainError("generate_state supports 1..16 qubits");
    if (partition && kind != StateKind::Separable) throw DomainError("a partition only applies to separable states");
    const double s2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case StateKind::Random: return random_state(n, seed);
        case StateKind::Bell: {
            if (n != 2) throw DomainError("bell state is defined for n = 2");
            return AlgebraElement(2, 2, {s2, 0.0, 0.0, s2});
        }
        case StateKind::Ghz: {
            if (n < 2) throw DomainError("ghz state needs n >= 2");
            AlgebraElement x(n, 2);
            return x.with(0, s2).with(x.size() - 1, s2);
        }
        case StateKind::W: {
            if (n < 2) throw DomainError("w state needs n >= 2");
            AlgebraElement x(n, 2);
            const double amp = 1.0 / std::sqrt(static_cast<double>(n));
            for (int k = 0; k < n; ++k) x = x.with(site_bit(k, n), amp);
            return x;
        }
        case StateKind::Separable: {
            std::vector<std::vector<int>> singletons;
            for (int k = 0; k < n; ++k) singletons.push_back({k});
            const SetPartition pi = partition ? *partition : SetPartition(singletons);
            if (pi.elements() != n) throw DomainError("partition does not cover all sites");
            AlgebraElement out = AlgebraElement::identity(n, 2);
            for (std::size_t b = 0; b < pi.size(); ++b) {
                const auto& block = pi.blocks()[b];
                const AlgebraElement factor =
                    random_state(static_cast<int>(block.size()), derive_seed(seed, b));
                // Disjoint supports: the algebra product is the tensor product.
                out = algebra_product(out, embed_sites(factor, block, n));
            }
            return out;
        }
    }
    throw DomainError("unknown state kind");
}

}  // namespace qinv
