#include "braille/job_handle.hpp"

namespace braille {

JobHandle::JobHandle(Backend backend, const MachineConfig& cfg, PauseHandler on_pause)
    : machine_(backend, cfg) {
  machine_.set_pause_handler(std::move(on_pause));
  worker_ = std::thread([this] { run(); });
}

JobHandle::~JobHandle() {
  {
    std::lock_guard lock(mu_);
    closing_ = true;
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::future<void> JobHandle::submit(const Command& cmd) {
  std::lock_guard lock(mu_);
  if (closing_) throw std::logic_error("JobHandle::submit after finish");
  queue_.push_back(Item{cmd, {}});
  auto fut = queue_.back().ack.get_future();
  ++in_flight_;
  cv_.notify_all();
  return fut;
}

void JobHandle::run() {
  for (;;) {
    Item item;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [this] { return closing_ || !queue_.empty(); });
      if (queue_.empty()) return;
      item = std::move(queue_.front());
      queue_.pop_front();
    }
    std::exception_ptr err;
    {
      std::lock_guard lock(mu_);
      err = error_;
    }
    if (!err) {
      try {
        machine_.execute(item.cmd);
      } catch (...) {
        err = std::current_exception();
      }
    }
    if (err)
      item.ack.set_exception(err);
    else
      item.ack.set_value();
    {
      std::lock_guard lock(mu_);
      if (err && !error_) error_ = err;
      --in_flight_;
    }
    cv_.notify_all();
  }
}

void JobHandle::sync() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return in_flight_ == 0; });
  if (error_) std::rethrow_exception(error_);
}

JobResult JobHandle::finish() {
  sync();
  {
    std::lock_guard lock(mu_);
    closing_ = true;
  }
  cv_.notify_all();
  worker_.join();
  return machine_.finish();
}

}  // namespace braille
