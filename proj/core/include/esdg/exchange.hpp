#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <thread>
#include <vector>

#include "esdg/error.hpp"

namespace esdg {

/// In-process transport with the ordering contract of non-blocking message
/// passing: a send makes the trace visible to exactly one matching receive
/// of the same epoch; receives may complete in any order and block until
/// the matching send lands. Face traces are staged through explicit buffer
/// copies (the host-staging model), never read from the peer's shard.
template <class Real>
class Transport {
public:
  Transport(int n_mailboxes, int trace_len) : n_(n_mailboxes) {
    boxes_ = std::make_unique<Mailbox[]>(size_t(n_mailboxes));
    for (int i = 0; i < n_mailboxes; ++i)
      boxes_[size_t(i)].buf.assign(size_t(trace_len), Real(0));
  }

  /// Test hook, called in the sender before the trace becomes visible.
  std::function<void(int src_rank, int dst_rank)> send_hook;

  void send(int box, const Real* trace, std::uint64_t epoch, int src_rank,
            int dst_rank) {
    Mailbox& mb = boxes_[size_t(box)];
    if (send_hook) send_hook(src_rank, dst_rank);
    std::copy(trace, trace + mb.buf.size(), mb.buf.begin());
    mb.arrival_ns.store(now_ns(), std::memory_order_relaxed);
    mb.epoch.store(epoch, std::memory_order_release);
  }

  /// Blocks until the epoch's trace is visible; hard timeout so a missing
  /// peer turns into an error instead of a deadlock.
  const Real* wait(int box, std::uint64_t epoch) {
    Mailbox& mb = boxes_[size_t(box)];
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::seconds(60);
    int spins = 0;
    while (mb.epoch.load(std::memory_order_acquire) < epoch) {
      if (++spins > 2000) {
        if (std::chrono::steady_clock::now() > deadline)
          throw ExchangeTimeout("face trace never arrived (mailbox " +
                                std::to_string(box) + ")");
        std::this_thread::sleep_for(std::chrono::microseconds(50));
      }
    }
    return mb.buf.data();
  }

  std::int64_t arrival_ns(int box) const {
    return boxes_[size_t(box)].arrival_ns.load(std::memory_order_relaxed);
  }

  static std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  }

private:
  struct Mailbox {
    std::vector<Real> buf;
    std::atomic<std::uint64_t> epoch{0};
    std::atomic<std::int64_t> arrival_ns{0};
  };

  int n_;
  std::unique_ptr<Mailbox[]> boxes_;
};

/// Per-rank phase timestamps of one RHS evaluation, for the overlap check:
/// with a slow transport, volume work must begin before the last ghost
/// trace arrives.
struct RankEvents {
  std::int64_t sends_posted_ns = 0;
  std::int64_t volume_start_ns = 0;
  std::int64_t volume_end_ns = 0;
  std::int64_t wait_end_ns = 0;
  std::int64_t last_arrival_ns = 0;
};

} // namespace esdg
