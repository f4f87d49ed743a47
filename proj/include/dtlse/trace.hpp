// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dtlse {

/// Operation tags recorded during a computation. The sequence of tags is the
/// software stand-in for a power trace: uniform tag sequences across secret
/// inputs are the analogue of uniform power traces.
enum class Op : uint8_t {
    Add,
    Sub,
    Mul,
    Inv,
    DblPt,
    AddPt,
    Shift,
    Csel,
};

const char* op_name(Op op);

/// Append-only operation trace, comparable for exact equality.
struct OpTrace {
    std::vector<Op> ops;

    void append(Op op) { ops.push_back(op); }
    size_t size() const { return ops.size(); }
    friend bool operator==(const OpTrace&, const OpTrace&) = default;

    std::string to_string() const;  // space-separated tag names
};

/// Installs `trace` as the active recorder for the current thread until the
/// scope ends. Recording is opt-in: with no scope installed, instrumented
/// operations skip trace appends entirely.
class TraceScope {
  public:
    explicit TraceScope(OpTrace& trace);
    ~TraceScope();
    TraceScope(const TraceScope&) = delete;
    TraceScope& operator=(const TraceScope&) = delete;

  private:
    OpTrace* prev_;
};

/// Suspends trace recording for the current thread until the scope ends.
class TracePause {
  public:
    TracePause();
    ~TracePause();
    TracePause(const TracePause&) = delete;
    TracePause& operator=(const TracePause&) = delete;

  private:
    OpTrace* prev_;
};

OpTrace* active_trace();
inline void trace_op(Op op) {
    if (OpTrace* t = active_trace()) t->append(op);
}

}  // namespace dtlse
