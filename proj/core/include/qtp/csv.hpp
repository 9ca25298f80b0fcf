#pragma once

#include <string>
#include <vector>

#include "qtp/scenario.hpp"

namespace qtp {

// One CSV per table in out_dir, named <table>.csv. Each file starts with a
// comment line carrying the tool version and the config hash, then a header
// row. Numbers are written with %.17g so reruns are byte-identical.
// Returns the paths written. Throws Error on I/O failure.
std::vector<std::string> emit_csv(const ResultBundle& bundle,
                                  const std::string& out_dir);

}  // namespace qtp
