#pragma once

#include "doctest.h"

#include "drlab/error.hpp"

namespace support {

/// Runs fn and returns the code of the drlab::Error it throws.
template <class F>
drlab::Errc error_code_of(F&& fn) {
  try {
    fn();
  } catch (const drlab::Error& e) {
    return e.code();
  }
  FAIL("expected drlab::Error");
  return drlab::Errc::InvalidInput;
}

}  // namespace support
