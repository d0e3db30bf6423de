#pragma once

// HTTP front end for live demonstration sessions. Requires cpp-httplib
// (httplib.h) on the include path.

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <httplib.h>

#include "salfd/pipeline.hpp"

namespace salfd {

// One demonstrator. Each placement is expanded into frames, the new
// keyframe is paired with the previous one, and the step is learned
// immediately.
class Session {
public:
  Session(std::string id, PipelineConfig cfg)
      : id_(std::move(id)),
        cfg_(std::move(cfg)),
        stream_(cfg_.catalog, cfg_.bounds, cfg_.noise, cfg_.frames_per_state,
                cfg_.occlusion_frames_per_event),
        learner_(cfg_) {
    auto frames = stream_.start();
    last_keyframe_ = pick_keyframe(frames);
    frame_count_ += frames.size();
  }

  struct Entry {
    BrickPlacement demonstrated;
    StepReport report;
  };

  // Throws FeasibilityError if the demonstrated brick cannot be placed; the
  // session is unchanged in that case.
  const Entry& place(const BrickPlacement& b) {
    auto frames = stream_.place(normalized(*cfg_.catalog, b));
    ObservationFrame kf = pick_keyframe(frames);
    StepReport report = learner_.step(last_keyframe_, kf);
    last_keyframe_ = std::move(kf);
    frame_count_ += frames.size();
    trace_.push_back({stream_.state().placements().back(), std::move(report)});
    return trace_.back();
  }

  const std::string& id() const { return id_; }
  const PipelineConfig& config() const { return cfg_; }
  const Assembly& demonstrated() const { return stream_.state(); }
  const Assembly& learned() const { return learner_.learned(); }
  const ConstructionPlan& plan() const { return learner_.plan(); }
  const std::vector<Entry>& trace() const { return trace_; }
  std::size_t frame_count() const { return frame_count_; }

  std::mutex& mutex() { return mutex_; }

private:
  ObservationFrame pick_keyframe(const std::vector<ObservationFrame>& frames) const {
    std::vector<FrameLabel> labels;
    for (const auto& f : frames) labels.push_back(classify_frame(f, cfg_.occlusion_threshold));
    return frames[sliding_filter_indices(labels).back()];
  }

  std::string id_;
  PipelineConfig cfg_;
  DemoStream stream_;
  Learner learner_;
  ObservationFrame last_keyframe_;
  std::vector<Entry> trace_;
  std::size_t frame_count_ = 0;
  std::mutex mutex_;
};

inline ordered_json to_json(const Session& s, const Session::Entry& e) {
  const BrickCatalog& catalog = *s.config().catalog;
  ordered_json j = to_json(catalog, e.report);
  ordered_json out;
  out["step"] = j["step"];
  out["demonstrated"] = to_json(catalog, e.demonstrated);
  for (auto& [k, v] : j.items()) {
    if (k != "step") out[k] = v;
  }
  out["matches_demonstration"] = e.report.accepted && *e.report.accepted == e.demonstrated;
  return out;
}

// Top-down snapshot of the demonstrated board plus both placement lists.
inline ordered_json state_json(const Session& s) {
  const BrickCatalog& catalog = *s.config().catalog;
  const Bounds& b = s.config().bounds;
  ordered_json j;
  j["bounds"] = {b.x, b.y, b.z};
  j["demonstrated"] = ordered_json::array();
  for (const auto& p : s.demonstrated().placements()) j["demonstrated"].push_back(to_json(catalog, p));
  j["learned"] = ordered_json::array();
  for (const auto& p : s.learned().placements()) j["learned"].push_back(to_json(catalog, p));
  const ObservationFrame top = render_clean(s.demonstrated());
  ordered_json height = ordered_json::array();
  ordered_json color = ordered_json::array();
  for (int y = 1; y <= b.y; ++y) {
    ordered_json hrow = ordered_json::array();
    ordered_json crow = ordered_json::array();
    for (int x = 1; x <= b.x; ++x) {
      const auto i = top.index(x, y);
      hrow.push_back(static_cast<int>(top.depth[i]));
      crow.push_back(std::string(to_string(top.color[i])));
    }
    height.push_back(std::move(hrow));
    color.push_back(std::move(crow));
  }
  j["height"] = std::move(height);
  j["color"] = std::move(color);
  return j;
}

class Service {
public:
  explicit Service(PipelineConfig defaults = {}) : defaults_(std::move(defaults)) {
    defaults_.validate();
    routes();
  }

  // Binds and serves until stop(). Throws if the address is unavailable.
  void listen(const std::string& host, int port) {
    if (!server_.bind_to_port(host, port)) {
      throw Error("cannot bind " + host + ":" + std::to_string(port));
    }
    server_.listen_after_bind();
  }

  // Binds an ephemeral port and returns it; call run() to serve.
  int bind_any(const std::string& host = "127.0.0.1") {
    const int port = server_.bind_to_any_port(host);
    if (port < 0) throw Error("cannot bind " + host);
    return port;
  }
  void run() { server_.listen_after_bind(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  void stop() { server_.stop(); }

  std::size_t session_count() {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

private:
  static void send(httplib::Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }
  static void send_error(httplib::Response& res, int status, const std::string& what) {
    ordered_json j;
    j["error"] = what;
    send(res, status, j);
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  void routes() {
    // SO_REUSEADDR only: with httplib's default SO_REUSEPORT a second server
    // would quietly share a busy port.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
    });
    server_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server_.Options(".*", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    server_.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      PipelineConfig cfg = defaults_;
      try {
        if (!req.body.empty()) cfg = config_from_json(detail::parse_document(req.body), cfg);
      } catch (const Error& e) {
        return send_error(res, 400, e.what());
      }
      std::string id = "s" + std::to_string(++next_id_);
      auto session = std::make_shared<Session>(id, cfg);
      {
        std::lock_guard lock(mutex_);
        sessions_.emplace(id, std::move(session));
      }
      ordered_json j;
      j["id"] = id;
      send(res, 201, j);
    });

    server_.Post(R"(/sessions/([^/]+)/place)", [this](const httplib::Request& req,
                                                      httplib::Response& res) {
      auto s = find(req.matches[1]);
      if (!s) return send_error(res, 404, "unknown session");
      BrickPlacement b;
      try {
        b = placement_from_json(*s->config().catalog, detail::parse_document(req.body));
      } catch (const Error& e) {
        return send_error(res, 400, e.what());
      }
      std::lock_guard lock(s->mutex());
      try {
        const auto& entry = s->place(b);
        send(res, 200, to_json(*s, entry));
      } catch (const FeasibilityError& e) {
        ordered_json j;
        j["error"] = std::string(to_string(e.verdict().kind));
        j["message"] = e.what();
        j["cells"] = ordered_json::array();
        for (const Cell& c : e.verdict().cells) j["cells"].push_back({c.x, c.y, c.z});
        send(res, 422, j);
      }
    });

    server_.Get(R"(/sessions/([^/]+)/plan)", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
      auto s = find(req.matches[1]);
      if (!s) return send_error(res, 404, "unknown session");
      std::lock_guard lock(s->mutex());
      ConstructionPlan plan = s->plan();
      if (req.has_param("reversed") && req.get_param_value("reversed") == "true") {
        plan = reverse_plan(plan);
      }
      res.status = 200;
      res.set_content(serialize(plan, *s->config().catalog), "application/json");
    });

    server_.Get(R"(/sessions/([^/]+)/trace)", [this](const httplib::Request& req,
                                                     httplib::Response& res) {
      auto s = find(req.matches[1]);
      if (!s) return send_error(res, 404, "unknown session");
      std::lock_guard lock(s->mutex());
      ordered_json j;
      j["id"] = s->id();
      j["frames"] = s->frame_count();
      j["steps"] = ordered_json::array();
      for (const auto& e : s->trace()) j["steps"].push_back(to_json(*s, e));
      send(res, 200, j);
    });

    server_.Get(R"(/sessions/([^/]+)/state)", [this](const httplib::Request& req,
                                                     httplib::Response& res) {
      auto s = find(req.matches[1]);
      if (!s) return send_error(res, 404, "unknown session");
      std::lock_guard lock(s->mutex());
      send(res, 200, state_json(*s));
    });

    server_.Delete(R"(/sessions/([^/]+))", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
      std::lock_guard lock(mutex_);
      if (sessions_.erase(req.matches[1]) == 0) return send_error(res, 404, "unknown session");
      res.status = 204;
    });
  }

  PipelineConfig defaults_;
  httplib::Server server_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::atomic<long long> next_id_{0};
};

}  // namespace salfd
