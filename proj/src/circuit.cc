// Copyright 2026 The hybridts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hybridts/circuit.h"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hybridts/caps.h"

namespace hybridts {

std::vector<Control> equals(const std::vector<int> &reg, std::uint64_t value) {
    std::vector<Control> out;
    out.reserve(reg.size());
    for (std::size_t k = 0; k < reg.size(); k++) {
        out.push_back({reg[k], ((value >> k) & 1) != 0});
    }
    return out;
}

std::vector<Control> operator+(std::vector<Control> a, const std::vector<Control> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Circuit::Circuit(int num_wires) : num_wires_(num_wires) {
    if (num_wires < 0 || num_wires > kMaxWires) {
        throw std::invalid_argument("wire count out of range");
    }
}

int Circuit::add_wires(int count) {
    if (num_wires_ + count > kMaxWires) {
        throw std::length_error("circuit exceeds " + std::to_string(kMaxWires) + " wires");
    }
    int first = num_wires_;
    num_wires_ += count;
    return first;
}

std::vector<int> Circuit::add_register(int count) {
    int first = add_wires(count);
    std::vector<int> reg(count);
    for (int k = 0; k < count; k++) {
        reg[k] = first + k;
    }
    return reg;
}

void Circuit::check_wires(const std::vector<int> &targets, const std::vector<Control> &controls) const {
    std::vector<bool> used(num_wires_, false);
    auto claim = [&](int w) {
        if (w < 0 || w >= num_wires_) {
            throw std::invalid_argument("wire " + std::to_string(w) + " out of range");
        }
        if (used[w]) {
            throw std::invalid_argument("wire " + std::to_string(w) + " used twice in one gate");
        }
        used[w] = true;
    };
    for (int t : targets) {
        claim(t);
    }
    for (const auto &c : controls) {
        claim(c.wire);
    }
}

void Circuit::x(int target, std::vector<Control> controls) {
    check_wires({target}, controls);
    gates_.push_back({GateKind::kX, {target}, std::move(controls)});
}

void Circuit::h(int target) {
    check_wires({target}, {});
    gates_.push_back({GateKind::kH, {target}, {}});
}

void Circuit::unitary(std::vector<int> targets, const Eigen::MatrixXcd &block, std::vector<Control> controls) {
    check_wires(targets, controls);
    Eigen::Index dim = Eigen::Index{1} << targets.size();
    if (block.rows() != dim || block.cols() != dim) {
        throw std::invalid_argument("block size does not match target count");
    }
    double residual = (block.adjoint() * block - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (residual > 1e-12) {
        throw std::invalid_argument("non-unitary block");
    }
    blocks_.push_back(block);
    Gate g{GateKind::kUnitary, std::move(targets), std::move(controls)};
    g.block = (int)blocks_.size() - 1;
    gates_.push_back(std::move(g));
}

void Circuit::increment(std::vector<int> reg, std::int64_t delta, std::vector<Control> controls) {
    if (reg.empty() || reg.size() > 62) {
        throw std::invalid_argument("incrementer width must be 1..62");
    }
    check_wires(reg, controls);
    Gate g{GateKind::kIncrement, std::move(reg), std::move(controls)};
    g.delta = delta;
    gates_.push_back(std::move(g));
}

void Circuit::phase_flip(std::vector<Control> controls) {
    check_wires({}, controls);
    gates_.push_back({GateKind::kPhaseFlip, {}, std::move(controls)});
}

void Circuit::reflect_about_zero(const std::vector<int> &wires) {
    phase_flip(equals(wires, 0));
}

void Circuit::append(const Circuit &other) {
    if (other.num_wires_ > num_wires_) {
        throw std::invalid_argument("appended circuit is wider");
    }
    int offset = (int)blocks_.size();
    for (const auto &b : other.blocks_) {
        blocks_.push_back(b);
    }
    for (const auto &cp : other.checkpoints_) {
        checkpoints_.push_back({cp.position + gates_.size(), cp.label, cp.ancillas});
    }
    for (Gate g : other.gates_) {
        if (g.block >= 0) {
            g.block += offset;
        }
        gates_.push_back(std::move(g));
    }
}

void Circuit::checkpoint(std::string label, std::vector<int> ancillas) {
    check_wires(ancillas, {});
    checkpoints_.push_back({gates_.size(), std::move(label), std::move(ancillas)});
}

Circuit Circuit::inverse() const {
    Circuit out(num_wires_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::kUnitary) {
            out.blocks_.push_back(blocks_[g.block].adjoint());
            g.block = (int)out.blocks_.size() - 1;
        } else if (g.kind == GateKind::kIncrement) {
            g.delta = -g.delta;
        }
        out.gates_.push_back(std::move(g));
    }
    return out;
}

bool Circuit::classical() const {
    for (const auto &g : gates_) {
        if (!g.classical()) {
            return false;
        }
    }
    return true;
}

std::string Circuit::to_text() const {
    static const char *names[] = {"X", "H", "U", "INC", "PHASE"};
    std::ostringstream out;
    out << "wires " << num_wires_ << "\n";
    for (const auto &g : gates_) {
        out << names[(int)g.kind];
        if (g.kind == GateKind::kIncrement) {
            out << "(" << g.delta << ")";
        }
        if (g.kind == GateKind::kUnitary) {
            out << "[block " << g.block << "]";
        }
        if (!g.controls.empty()) {
            out << " c:";
            for (std::size_t k = 0; k < g.controls.size(); k++) {
                out << (k ? "," : "") << (g.controls[k].on_one ? "" : "~") << g.controls[k].wire;
            }
        }
        if (!g.targets.empty()) {
            out << " t:";
            for (std::size_t k = 0; k < g.targets.size(); k++) {
                out << (k ? "," : "") << g.targets[k];
            }
        }
        out << "\n";
    }
    return out.str();
}

int dense_wire_cap() {
    std::int64_t cap = dimension_cap(kDefaultCircuitDimensionCap);
    int wires = 0;
    while (wires < 40 && (std::int64_t{1} << (wires + 1)) <= cap) {
        wires++;
    }
    return wires;
}

StateVector::StateVector(int num_wires) : num_wires_(num_wires) {
    if (num_wires < 0 || num_wires > dense_wire_cap()) {
        throw std::length_error("dense simulation of " + std::to_string(num_wires) + " wires exceeds the cap of " +
                                std::to_string(dense_wire_cap()));
    }
    amps_.assign(std::size_t{1} << num_wires, Amplitude(0));
}

StateVector StateVector::basis(int num_wires, std::uint64_t index) {
    StateVector s(num_wires);
    s.amps_.at(index) = 1;
    return s;
}

double StateVector::norm() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

double StateVector::probability_zero(const std::vector<int> &wires) const {
    std::uint64_t mask = 0;
    for (int w : wires) {
        mask |= std::uint64_t{1} << w;
    }
    double p = 0;
    for (std::uint64_t i = 0; i < amps_.size(); i++) {
        if ((i & mask) == 0) {
            p += std::norm(amps_[i]);
        }
    }
    return p;
}

namespace {

struct Mask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
    bool holds(std::uint64_t i) const {
        return (i & mask) == value;
    }
};

Mask control_mask(const std::vector<Control> &controls) {
    Mask m;
    for (const auto &c : controls) {
        m.mask |= std::uint64_t{1} << c.wire;
        if (c.on_one) {
            m.value |= std::uint64_t{1} << c.wire;
        }
    }
    return m;
}

std::uint64_t add_to_register(std::uint64_t value, const std::vector<int> &reg, std::int64_t delta) {
    std::uint64_t r = 0;
    for (std::size_t k = 0; k < reg.size(); k++) {
        r |= ((value >> reg[k]) & 1) << k;
    }
    std::uint64_t width_mask = (std::uint64_t{1} << reg.size()) - 1;
    r = (r + (std::uint64_t)delta) & width_mask;
    for (std::size_t k = 0; k < reg.size(); k++) {
        std::uint64_t bit = std::uint64_t{1} << reg[k];
        value = ((r >> k) & 1) ? (value | bit) : (value & ~bit);
    }
    return value;
}

bool controls_hold(const BasisState &s, const std::vector<Control> &controls) {
    for (const auto &c : controls) {
        if (s[c.wire] != c.on_one) {
            return false;
        }
    }
    return true;
}

void apply_classical(const Gate &g, BasisState &s, int &sign) {
    if (!controls_hold(s, g.controls)) {
        return;
    }
    switch (g.kind) {
        case GateKind::kX:
            s.flip(g.targets[0]);
            break;
        case GateKind::kIncrement: {
            std::uint64_t r = read_register(s, g.targets);
            std::uint64_t width_mask = (std::uint64_t{1} << g.targets.size()) - 1;
            write_register(s, g.targets, (r + (std::uint64_t)g.delta) & width_mask);
            break;
        }
        case GateKind::kPhaseFlip:
            sign = -sign;
            break;
        default:
            throw std::invalid_argument("gate is not classical");
    }
}

void apply_dense(const Circuit &c, const Gate &g, std::vector<Amplitude> &a) {
    Mask ctl = control_mask(g.controls);
    std::uint64_t dim = a.size();
    switch (g.kind) {
        case GateKind::kX: {
            std::uint64_t bit = std::uint64_t{1} << g.targets[0];
            for (std::uint64_t i = 0; i < dim; i++) {
                if (!(i & bit) && ctl.holds(i)) {
                    std::swap(a[i], a[i | bit]);
                }
            }
            break;
        }
        case GateKind::kH: {
            std::uint64_t bit = std::uint64_t{1} << g.targets[0];
            const double r = 1 / std::sqrt(2.0);
            for (std::uint64_t i = 0; i < dim; i++) {
                if (!(i & bit)) {
                    Amplitude x = a[i], y = a[i | bit];
                    a[i] = r * (x + y);
                    a[i | bit] = r * (x - y);
                }
            }
            break;
        }
        case GateKind::kUnitary: {
            const auto &u = c.blocks()[g.block];
            std::size_t k = g.targets.size();
            std::uint64_t tmask = 0;
            std::vector<std::uint64_t> offsets(std::size_t{1} << k, 0);
            for (std::size_t j = 0; j < k; j++) {
                tmask |= std::uint64_t{1} << g.targets[j];
            }
            for (std::uint64_t local = 0; local < offsets.size(); local++) {
                for (std::size_t j = 0; j < k; j++) {
                    if ((local >> j) & 1) {
                        offsets[local] |= std::uint64_t{1} << g.targets[j];
                    }
                }
            }
            Eigen::VectorXcd in(offsets.size()), out;
            for (std::uint64_t i = 0; i < dim; i++) {
                if ((i & tmask) || !ctl.holds(i)) {
                    continue;
                }
                for (std::size_t l = 0; l < offsets.size(); l++) {
                    in[l] = a[i | offsets[l]];
                }
                out = u * in;
                for (std::size_t l = 0; l < offsets.size(); l++) {
                    a[i | offsets[l]] = out[l];
                }
            }
            break;
        }
        case GateKind::kIncrement: {
            std::vector<Amplitude> next(dim, Amplitude(0));
            for (std::uint64_t i = 0; i < dim; i++) {
                if (a[i] == Amplitude(0)) {
                    continue;
                }
                next[ctl.holds(i) ? add_to_register(i, g.targets, g.delta) : i] += a[i];
            }
            a.swap(next);
            break;
        }
        case GateKind::kPhaseFlip:
            for (std::uint64_t i = 0; i < dim; i++) {
                if (ctl.holds(i)) {
                    a[i] = -a[i];
                }
            }
            break;
    }
}

}  // namespace

std::uint64_t read_register(const BasisState &s, const std::vector<int> &reg) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < reg.size(); k++) {
        if (s[reg[k]]) {
            v |= std::uint64_t{1} << k;
        }
    }
    return v;
}

void write_register(BasisState &s, const std::vector<int> &reg, std::uint64_t value) {
    for (std::size_t k = 0; k < reg.size(); k++) {
        s[reg[k]] = ((value >> k) & 1) != 0;
    }
}

bool ReversibleTrace::all_restored() const {
    for (const auto &r : restored) {
        if (!r.second) {
            return false;
        }
    }
    return true;
}

ReversibleTrace trace(const Circuit &circuit, const BasisState &input) {
    ReversibleTrace t;
    t.output = input;
    const auto &cps = circuit.checkpoints();
    std::size_t next_cp = 0;
    auto check = [&](std::size_t position) {
        while (next_cp < cps.size() && cps[next_cp].position == position) {
            bool ok = true;
            for (int w : cps[next_cp].ancillas) {
                ok = ok && t.output[w] == input[w];
            }
            t.restored.emplace_back(cps[next_cp].label, ok);
            next_cp++;
        }
    };
    const auto &gates = circuit.gates();
    for (std::size_t k = 0; k < gates.size(); k++) {
        check(k);
        apply_classical(gates[k], t.output, t.sign);
    }
    check(gates.size());
    return t;
}

void simulate(const Circuit &circuit, StateVector &state) {
    if (circuit.num_wires() > state.num_wires()) {
        throw std::invalid_argument("state has fewer wires than the circuit");
    }
    auto &a = state.amplitudes();
    if (circuit.classical()) {
        std::uint64_t nonzero = 0, where = 0;
        for (std::uint64_t i = 0; i < a.size() && nonzero < 2; i++) {
            if (a[i] != Amplitude(0)) {
                nonzero++;
                where = i;
            }
        }
        if (nonzero == 1) {
            BasisState in(where);
            auto t = trace(circuit, in);
            Amplitude amp = a[where] * (double)t.sign;
            a[where] = 0;
            a[t.output.to_ullong()] = amp;
            return;
        }
    }
    for (const auto &g : circuit.gates()) {
        apply_dense(circuit, g, a);
    }
}

void simulate(const Circuit &circuit, SparseState &state) {
    const double prune = 1e-15;
    for (const auto &g : circuit.gates()) {
        SparseState next;
        next.reserve(state.size() * 2);
        for (const auto &[s, amp] : state) {
            if (!controls_hold(s, g.controls)) {
                next[s] += amp;
                continue;
            }
            switch (g.kind) {
                case GateKind::kX:
                case GateKind::kIncrement:
                case GateKind::kPhaseFlip: {
                    BasisState t = s;
                    int sign = 1;
                    apply_classical(g, t, sign);
                    next[t] += amp * (double)sign;
                    break;
                }
                case GateKind::kH: {
                    const double r = 1 / std::sqrt(2.0);
                    BasisState zero = s, one = s;
                    zero[g.targets[0]] = false;
                    one[g.targets[0]] = true;
                    next[zero] += r * amp;
                    next[one] += (s[g.targets[0]] ? -r : r) * amp;
                    break;
                }
                case GateKind::kUnitary: {
                    const auto &u = circuit.blocks()[g.block];
                    std::uint64_t col = read_register(s, g.targets);
                    for (Eigen::Index row = 0; row < u.rows(); row++) {
                        if (u(row, (Eigen::Index)col) == Amplitude(0)) {
                            continue;
                        }
                        BasisState t = s;
                        write_register(t, g.targets, (std::uint64_t)row);
                        next[t] += u(row, (Eigen::Index)col) * amp;
                    }
                    break;
                }
            }
        }
        for (auto it = next.begin(); it != next.end();) {
            it = std::abs(it->second) < prune ? next.erase(it) : std::next(it);
        }
        state.swap(next);
    }
}

}  // namespace hybridts
