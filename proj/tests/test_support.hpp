#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <afshar/errors.hpp>

// Expects f() to throw SimError with the given code; anything else fails.
template <class F>
void expect_error(afshar::Errc code, F&& f) {
  try {
    f();
    FAIL("expected " << afshar::code_name(code) << ", nothing was thrown");
  } catch (const afshar::SimError& e) {
    INFO(e.what());
    CHECK(e.code() == code);
  }
}
