#pragma once

#include "config.hpp"
#include "manifest.hpp"

namespace landau::cli {

/// Runs every invariant check, writes verify.json next to the manifest and
/// returns 0 iff all checks pass.
int run_verify(const CommonSettings& common, const VerifySettings& settings, Manifest& manifest);

}  // namespace landau::cli
