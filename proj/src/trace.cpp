// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dtlse/trace.hpp"

namespace dtlse {

namespace {
thread_local OpTrace* g_active_trace = nullptr;
}

const char* op_name(Op op) {
    switch (op) {
        case Op::Add: return "ADD";
        case Op::Sub: return "SUB";
        case Op::Mul: return "MUL";
        case Op::Inv: return "INV";
        case Op::DblPt: return "DBL_PT";
        case Op::AddPt: return "ADD_PT";
        case Op::Shift: return "SHIFT";
        case Op::Csel: return "CSEL";
    }
    return "?";
}

std::string OpTrace::to_string() const {
    std::string s;
    for (Op op : ops) {
        if (!s.empty()) s.push_back(' ');
        s.append(op_name(op));
    }
    return s;
}

TraceScope::TraceScope(OpTrace& trace) : prev_(g_active_trace) { g_active_trace = &trace; }
TraceScope::~TraceScope() { g_active_trace = prev_; }

TracePause::TracePause() : prev_(g_active_trace) { g_active_trace = nullptr; }
TracePause::~TracePause() { g_active_trace = prev_; }

OpTrace* active_trace() { return g_active_trace; }

}  // namespace dtlse
