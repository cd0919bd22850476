#pragma once

#include <condition_variable>
#include <deque>
#include <exception>
#include <future>
#include <mutex>
#include <thread>

#include "braille/machine.hpp"

namespace braille {

/// Runs a Machine on its own thread, fed through a FIFO queue. Each
/// submitted command is acknowledged through its future once executed; an
/// execution error is delivered through that future and every later one.
class JobHandle {
 public:
  JobHandle(Backend backend, const MachineConfig& cfg, PauseHandler on_pause = {});
  ~JobHandle();

  JobHandle(const JobHandle&) = delete;
  JobHandle& operator=(const JobHandle&) = delete;

  std::future<void> submit(const Command& cmd);
  /// Blocks until the queue is empty; rethrows the first execution error.
  void sync();
  /// Drains the queue, stops the worker and returns the job result.
  JobResult finish();

 private:
  struct Item {
    Command cmd;
    std::promise<void> ack;
  };

  void run();

  Machine machine_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Item> queue_;
  std::size_t in_flight_ = 0;
  bool closing_ = false;
  std::exception_ptr error_;
  std::thread worker_;
};

}  // namespace braille
