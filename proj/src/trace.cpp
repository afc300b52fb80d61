#include "tgx/trace.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tgx {

using json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 6> kKinds{{
    {EventKind::Send, "SEND"},
    {EventKind::Deliver, "DELIVER"},
    {EventKind::RbDeliver, "RB_DELIVER"},
    {EventKind::TimerExpire, "TIMER_EXPIRE"},
    {EventKind::Crash, "CRASH"},
    {EventKind::OutputChange, "OUTPUT_CHANGE"},
}};

EventKind parse_kind(const std::string& text) {
  for (const auto& [kind, name] : kKinds) {
    if (name == text) return kind;
  }
  throw InputError("trace: unknown event kind '" + text + "'");
}

json event_to_json(const TraceEvent& e) {
  json detail = json::object();
  if (!e.message.empty()) detail["msg"] = e.message;
  if (e.peer) detail["peer"] = *e.peer;
  if (e.seq) detail["seq"] = *e.seq;
  if (e.sent) detail["sent"] = *e.sent;
  return json{{"tick", e.tick},
              {"process", e.process},
              {"kind", std::string(to_string(e.kind))},
              {"detail", detail},
              {"output", e.output ? json(e.output->to_string()) : json()}};
}

}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "?";
}

void write_trace(std::ostream& out, const Trace& trace) {
  const auto& h = trace.header;
  json meta{{"tick", 0},
            {"process", nullptr},
            {"kind", "META"},
            {"detail",
             {{"algo", h.algo}, {"seed", h.seed}, {"n", h.n}, {"horizon", h.horizon},
              {"scenario", h.scenario_digest}}},
            {"output", nullptr}};
  out << meta.dump() << '\n';
  for (const auto& e : trace.events) out << event_to_json(e).dump() << '\n';
  if (!trace.audit) return;
  json audit{{"tick", h.horizon},
             {"process", nullptr},
             {"kind", "AUDIT"},
             {"detail",
              {{"counter_samples", trace.audit->samples},
               {"counter_regressions", trace.audit->regressions},
               {"first_regression", trace.audit->first_regression}}},
             {"output", nullptr}};
  out << audit.dump() << '\n';
}

std::string serialize_trace(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  bool saw_meta = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      const json& d = j.at("detail");
      if (kind == "META") {
        trace.header.algo = d.at("algo").get<std::string>();
        trace.header.seed = d.at("seed").get<std::uint64_t>();
        trace.header.n = d.at("n").get<std::size_t>();
        trace.header.horizon = d.at("horizon").get<Tick>();
        trace.header.scenario_digest = d.at("scenario").get<std::uint64_t>();
        saw_meta = true;
        continue;
      }
      if (kind == "AUDIT") {
        CounterAudit audit;
        audit.samples = d.at("counter_samples").get<std::uint64_t>();
        audit.regressions = d.at("counter_regressions").get<std::uint64_t>();
        audit.first_regression = d.at("first_regression").get<std::string>();
        trace.audit = audit;
        continue;
      }
      TraceEvent e;
      e.tick = j.at("tick").get<Tick>();
      e.process = j.at("process").get<ProcessId>();
      e.kind = parse_kind(kind);
      if (d.contains("msg")) e.message = d.at("msg").get<std::string>();
      if (d.contains("peer")) e.peer = d.at("peer").get<ProcessId>();
      if (d.contains("seq")) e.seq = d.at("seq").get<std::uint64_t>();
      if (d.contains("sent")) e.sent = d.at("sent").get<Tick>();
      if (!j.at("output").is_null()) e.output = TimelinessGraph::parse(j.at("output").get<std::string>());
      trace.events.push_back(std::move(e));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& ex) {
      throw InputError("trace line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  if (!saw_meta) throw InputError("trace: missing META header line");
  return trace;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("trace: cannot open '" + path + "'");
  return read_trace(in);
}

}  // namespace tgx
