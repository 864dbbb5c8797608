#pragma once

#include <gtest/gtest.h>

#include <string>

#include "fqs/error.hpp"

template <class Fn>
void expect_error(fqs::ErrorCode code, Fn&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected error " << fqs::to_string(code);
    } catch (const fqs::Error& e) {
        EXPECT_EQ(e.code(), code) << "got " << fqs::to_string(e.code()) << ": " << e.what();
    }
}
