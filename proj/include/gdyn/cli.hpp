#pragma once

namespace gdyn {

/// Exit status: 0 success, 2 validation error, 3 numerical failure.
int run(int argc, char** argv);

}  // namespace gdyn
