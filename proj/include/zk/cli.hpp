#pragma once

namespace zk {

// zklab entry point.  Exit codes: 1 config error, 2 numerical failure, 0 otherwise.
int run(int argc, char** argv);

}  // namespace zk
