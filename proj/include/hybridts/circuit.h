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

#ifndef HYBRIDTS_CIRCUIT_H
#define HYBRIDTS_CIRCUIT_H

#include <bitset>
#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hybridts {

using Amplitude = std::complex<double>;

/// Widest circuit the basis-trace and sparse simulators accept.
constexpr int kMaxWires = 256;
using BasisState = std::bitset<kMaxWires>;

struct Control {
    int wire = 0;
    bool on_one = true;
};

/// Controls matching `value` on `reg` (least significant wire first).
std::vector<Control> equals(const std::vector<int> &reg, std::uint64_t value);
std::vector<Control> operator+(std::vector<Control> a, const std::vector<Control> &b);

enum class GateKind {
    /// Pauli X on one target; with controls this is CNOT / Toffoli / MCX.
    kX,
    kH,
    /// Dense block on the target wires (first target = least significant bit).
    kUnitary,
    /// Adds `delta` modulo 2^width to the target register.
    kIncrement,
    /// Multiplies by -1 when every control holds.
    kPhaseFlip,
};

struct Gate {
    GateKind kind = GateKind::kX;
    std::vector<int> targets;
    std::vector<Control> controls;
    int block = -1;
    std::int64_t delta = 1;

    /// Maps basis states to basis states up to a sign.
    bool classical() const {
        return kind == GateKind::kX || kind == GateKind::kIncrement || kind == GateKind::kPhaseFlip;
    }
};

struct Checkpoint {
    /// Number of gates applied before the check.
    std::size_t position = 0;
    std::string label;
    std::vector<int> ancillas;
};

class Circuit {
   public:
    explicit Circuit(int num_wires = 0);

    int num_wires() const {
        return num_wires_;
    }
    /// Appends `count` fresh wires and returns the first index.
    int add_wires(int count);
    std::vector<int> add_register(int count);

    const std::vector<Gate> &gates() const {
        return gates_;
    }
    const std::vector<Eigen::MatrixXcd> &blocks() const {
        return blocks_;
    }
    const std::vector<Checkpoint> &checkpoints() const {
        return checkpoints_;
    }

    void x(int target, std::vector<Control> controls = {});
    void h(int target);
    /// Throws std::invalid_argument unless the block is unitary to 1e-12.
    void unitary(std::vector<int> targets, const Eigen::MatrixXcd &block, std::vector<Control> controls = {});
    void increment(std::vector<int> reg, std::int64_t delta = 1, std::vector<Control> controls = {});
    void phase_flip(std::vector<Control> controls);
    /// I - 2|0><0| on `wires`.
    void reflect_about_zero(const std::vector<int> &wires);
    /// Appends another circuit acting on this circuit's first wires.
    void append(const Circuit &other);
    void checkpoint(std::string label, std::vector<int> ancillas);

    Circuit inverse() const;
    bool classical() const;
    std::size_t gate_count() const {
        return gates_.size();
    }
    /// One gate per line: name, controls (~ for a 0-control), targets.
    std::string to_text() const;

   private:
    void check_wires(const std::vector<int> &targets, const std::vector<Control> &controls) const;

    int num_wires_ = 0;
    std::vector<Gate> gates_;
    std::vector<Eigen::MatrixXcd> blocks_;
    std::vector<Checkpoint> checkpoints_;
};

/// Dense state over at most log2(dimension cap) wires; wire w is bit w of the index.
class StateVector {
   public:
    StateVector() = default;
    /// Throws std::length_error past the dense cap.
    explicit StateVector(int num_wires);
    static StateVector basis(int num_wires, std::uint64_t index);

    int num_wires() const {
        return num_wires_;
    }
    std::vector<Amplitude> &amplitudes() {
        return amps_;
    }
    const std::vector<Amplitude> &amplitudes() const {
        return amps_;
    }
    double norm() const;
    /// Probability that every wire of `wires` reads zero.
    double probability_zero(const std::vector<int> &wires) const;

   private:
    int num_wires_ = 0;
    std::vector<Amplitude> amps_;
};

int dense_wire_cap();

/// Exact evolution. A single basis-state input through a classical circuit
/// goes through the trace path.
void simulate(const Circuit &circuit, StateVector &state);

using SparseState = std::unordered_map<BasisState, Amplitude>;
/// Evolution keeping only nonzero amplitudes; handles any wire count up to kMaxWires.
void simulate(const Circuit &circuit, SparseState &state);

struct ReversibleTrace {
    BasisState output;
    int sign = 1;
    /// Per checkpoint: label and whether every listed ancilla held its input value.
    std::vector<std::pair<std::string, bool>> restored;
    bool all_restored() const;
};

/// Basis-state path through a classical circuit. Throws std::invalid_argument
/// if a gate is not classical.
ReversibleTrace trace(const Circuit &circuit, const BasisState &input);

std::uint64_t read_register(const BasisState &s, const std::vector<int> &reg);
void write_register(BasisState &s, const std::vector<int> &reg, std::uint64_t value);

}  // namespace hybridts

#endif
