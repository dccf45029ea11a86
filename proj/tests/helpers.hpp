#pragma once

#include <doctest.h>

#include "scrub/error.hpp"

namespace testutil {

// Runs f, which must throw scrub::Error, and reports the error kind.
template <typename F>
scrub::ErrorKind error_kind(F&& f) {
    try {
        f();
    } catch (const scrub::Error& e) {
        return e.kind();
    }
    FAIL("expected a scrub::Error");
    return scrub::ErrorKind::Internal;
}

} // namespace testutil
