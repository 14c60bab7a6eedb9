#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "skytrace/model/meta.hpp"
#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::service {

using Clock = std::chrono::steady_clock;

// One uploaded log held in memory only.
struct Session {
  std::string id;
  std::shared_ptr<const ulog::FlightLog> log;
  model::FlightMeta meta;
  Clock::time_point created_at;
  std::atomic<Clock::rep> last_access{0};
};

// Concurrent id -> session map with idle-TTL eviction. Readers hold a
// shared_ptr, so eviction never pulls a log out from under a request.
class SessionStore {
 public:
  explicit SessionStore(std::chrono::seconds ttl, std::function<Clock::time_point()> now = Clock::now);
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  // Returns the new session (id: 128 random bits as 32 hex digits).
  std::shared_ptr<const Session> open(ulog::FlightLog log, const model::FlightMeta& meta);

  // nullptr for unknown or expired ids; refreshes last access otherwise.
  std::shared_ptr<const Session> find(const std::string& id);

  bool close(const std::string& id);
  std::size_t evict_expired();
  std::size_t size() const;
  std::chrono::seconds ttl() const { return ttl_; }

  // Background eviction every `interval` until stop_eviction() or destruction.
  void start_eviction(std::chrono::milliseconds interval);
  void stop_eviction();

 private:
  bool expired(const Session& s, Clock::time_point now) const;

  std::chrono::seconds ttl_;
  std::function<Clock::time_point()> now_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;

  std::mutex evict_mutex_;
  std::condition_variable_any evict_cv_;
  std::jthread evictor_;
};

std::string random_session_id();

}  // namespace skytrace::service
