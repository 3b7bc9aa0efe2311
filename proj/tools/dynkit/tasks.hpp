#pragma once

#include "output.hpp"
#include "schema.hpp"

namespace dynkit::cli {

// Runs the task of a resolved config, writing data files into out.
// Returns task-level summary values for the manifest.
json run_task(const json& config, OutputDir& out, int threads);

}  // namespace dynkit::cli
