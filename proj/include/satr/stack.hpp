#pragma once

#include <functional>

namespace satr {

// Run f on a thread with a large stack (deep DFS recursion on big graphs).
// Exceptions propagate.  Nested calls run inline.
void with_large_stack(const std::function<void()>& f);

}  // namespace satr
