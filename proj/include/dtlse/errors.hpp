// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace dtlse {

/// Cryptographic validation failure: bad key material, off-curve points,
/// failed authentication where the API reports by exception.
struct CryptoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Protocol-level failure: handshake cannot proceed.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dtlse
