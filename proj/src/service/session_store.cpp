#include "skytrace/service/session_store.hpp"

#include <array>
#include <cstdio>
#include <mutex>
#include <random>

namespace skytrace::service {

std::string random_session_id() {
  static thread_local std::random_device rd;
  std::array<std::uint32_t, 4> words{};
  for (auto& w : words) w = rd();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%08x%08x%08x%08x", words[0], words[1], words[2], words[3]);
  return buf;
}

SessionStore::SessionStore(std::chrono::seconds ttl, std::function<Clock::time_point()> now)
    : ttl_(ttl), now_(std::move(now)) {}

SessionStore::~SessionStore() { stop_eviction(); }

std::shared_ptr<const Session> SessionStore::open(ulog::FlightLog log, const model::FlightMeta& meta) {
  auto session = std::make_shared<Session>();
  session->log = std::make_shared<const ulog::FlightLog>(std::move(log));
  session->meta = meta;
  session->created_at = now_();
  session->last_access = session->created_at.time_since_epoch().count();

  std::unique_lock lock(mutex_);
  do {
    session->id = random_session_id();
  } while (sessions_.contains(session->id));
  sessions_.emplace(session->id, session);
  return session;
}

bool SessionStore::expired(const Session& s, Clock::time_point now) const {
  const Clock::time_point last{Clock::duration{s.last_access.load()}};
  return now - last > ttl_;
}

std::shared_ptr<const Session> SessionStore::find(const std::string& id) {
  std::shared_ptr<Session> session;
  {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    session = it->second;
  }
  const auto now = now_();
  if (expired(*session, now)) {
    close(id);
    return nullptr;
  }
  session->last_access = now.time_since_epoch().count();
  return session;
}

bool SessionStore::close(const std::string& id) {
  std::unique_lock lock(mutex_);
  return sessions_.erase(id) > 0;
}

std::size_t SessionStore::evict_expired() {
  const auto now = now_();
  std::unique_lock lock(mutex_);
  return std::erase_if(sessions_, [&](const auto& kv) { return expired(*kv.second, now); });
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

void SessionStore::start_eviction(std::chrono::milliseconds interval) {
  stop_eviction();
  evictor_ = std::jthread([this, interval](std::stop_token stop) {
    std::unique_lock lock(evict_mutex_);
    while (!stop.stop_requested()) {
      evict_cv_.wait_for(lock, stop, interval, [] { return false; });
      if (stop.stop_requested()) break;
      evict_expired();
    }
  });
}

void SessionStore::stop_eviction() {
  if (evictor_.joinable()) {
    evictor_.request_stop();
    evictor_.join();
  }
}

}  // namespace skytrace::service
