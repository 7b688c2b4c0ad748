#include "satr/stack.hpp"

#include <pthread.h>

#include <exception>
#include <stdexcept>

namespace satr {

namespace {

thread_local bool on_large_stack = false;

struct Job {
    const std::function<void()>* f;
    std::exception_ptr error;
};

void* trampoline(void* arg) {
    auto* job = static_cast<Job*>(arg);
    on_large_stack = true;
    try {
        (*job->f)();
    } catch (...) {
        job->error = std::current_exception();
    }
    return nullptr;
}

}  // namespace

void with_large_stack(const std::function<void()>& f) {
    if (on_large_stack) {
        f();
        return;
    }
    Job job{&f, nullptr};
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, size_t(1) << 30);
    pthread_t th;
    if (pthread_create(&th, &attr, trampoline, &job) != 0) {
        pthread_attr_destroy(&attr);
        f();
        return;
    }
    pthread_join(th, nullptr);
    pthread_attr_destroy(&attr);
    if (job.error) std::rethrow_exception(job.error);
}

}  // namespace satr
