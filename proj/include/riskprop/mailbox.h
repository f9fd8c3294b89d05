// Copyright 2026 The RiskProp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISKPROP_MAILBOX_H_
#define RISKPROP_MAILBOX_H_

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <stop_token>
#include <vector>

namespace riskprop {

// Many-producer, single-consumer queue. Producers append batches; the owner
// takes everything queued at once. Delivery order is not part of the
// contract.
template <typename T>
class RemoteMailbox {
 public:
  RemoteMailbox() = default;
  RemoteMailbox(const RemoteMailbox&) = delete;
  RemoteMailbox& operator=(const RemoteMailbox&) = delete;

  void Post(std::vector<T>& batch) {
    if (batch.empty()) return;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (queue_.empty()) {
        queue_.swap(batch);
      } else {
        queue_.insert(queue_.end(), batch.begin(), batch.end());
      }
    }
    batch.clear();
    ready_.notify_one();
  }

  void Post(const T& item) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      queue_.push_back(item);
    }
    ready_.notify_one();
  }

  // Moves all queued items into `out` (which must be empty). Returns false
  // when nothing was queued.
  bool TryTake(std::vector<T>& out) {
    std::lock_guard<std::mutex> lock(mu_);
    if (queue_.empty()) return false;
    out.swap(queue_);
    return true;
  }

  // Like TryTake, but waits up to `timeout` for something to arrive. Returns
  // early (false) when `stop` is requested.
  template <typename Rep, typename Period>
  bool TakeFor(std::vector<T>& out, std::chrono::duration<Rep, Period> timeout,
               std::stop_token stop = {}) {
    std::unique_lock<std::mutex> lock(mu_);
    if (!ready_.wait_for(lock, stop, timeout,
                         [this] { return !queue_.empty(); })) {
      return false;
    }
    out.swap(queue_);
    return true;
  }

 private:
  std::mutex mu_;
  std::condition_variable_any ready_;
  std::vector<T> queue_;
};

}  // namespace riskprop

#endif  // RISKPROP_MAILBOX_H_
