#include "ontoquery/enrichment.hpp"

#include <algorithm>
#include <cctype>

#include "ontoquery/error.hpp"
#include "ontoquery/ids.hpp"

namespace ontoquery {

bool is_nucleotide_sequence(std::string_view text) noexcept {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char ch) {
    switch (std::toupper(static_cast<unsigned char>(ch))) {
      case 'A': case 'C': case 'G': case 'T': case 'N': return true;
      default: return false;
    }
  });
}

std::vector<EnrichableColumn> detect_enrichable_columns(const ResultTable& table,
                                                        const SchemaIndex& schema) {
  std::vector<EnrichableColumn> out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const OutputColumn& col = table.columns[c];
    if (std::holds_alternative<Iri>(col.type) || !col.via_property) continue;
    const PropertyInfo* p = schema.find_property(*col.via_property);
    if (p == nullptr || !p->sequence) continue;
    const bool any = std::any_of(table.rows.begin(), table.rows.end(), [&](const auto& row) {
      return row[c].is_literal() && is_nucleotide_sequence(row[c].literal().lexical());
    });
    if (any) out.push_back({c, "values of '" + p->label + "' are nucleotide sequences"});
  }
  return out;
}

AlignmentHit StubAlignmentService::align(const std::string& sequence) {
  if (failure_) throw Error(ErrorCode::Internal, *failure_);
  return {std::string(sequence.rbegin(), sequence.rend()), static_cast<double>(sequence.size())};
}

std::string_view job_status_name(JobStatus s) noexcept {
  switch (s) {
    case JobStatus::Pending: return "pending";
    case JobStatus::Running: return "running";
    case JobStatus::Done: return "done";
    case JobStatus::Failed: return "failed";
  }
  return "unknown";
}

JobRegistry::JobRegistry(std::chrono::seconds expiry) : expiry_(expiry) {}

JobRegistry::~JobRegistry() {
  std::map<std::string, std::jthread> workers;
  {
    std::lock_guard lock(mutex_);
    workers.swap(workers_);
  }
  for (auto& [id, w] : workers) w.request_stop();
  // jthread destructors join.
}

EnrichmentJob JobRegistry::submit(const EnrichableColumn& column, const ResultTable& table,
                                  const SchemaIndex& schema,
                                  std::shared_ptr<AlignmentService> service) {
  const auto flagged = detect_enrichable_columns(table, schema);
  const bool ok = std::any_of(flagged.begin(), flagged.end(), [&](const EnrichableColumn& f) {
    return f.column_index == column.column_index;
  });
  if (!ok)
    throw Error(ErrorCode::UnflaggedColumn,
                "column " + std::to_string(column.column_index) + " is not enrichable");
  if (!service) throw Error(ErrorCode::InvalidArgument, "no alignment service configured");

  EnrichmentJob job;
  job.column = column.column_index;
  std::vector<std::string> sequences;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const Term& v = table.rows[r][column.column_index];
    if (!v.is_literal() || v.literal().lexical().empty()) continue;
    job.rows.push_back(r);
    sequences.push_back(v.literal().lexical());
  }

  std::lock_guard lock(mutex_);
  purge_locked();
  do job.id = random_hex_id(8);
  while (jobs_.count(job.id));
  jobs_[job.id] = Slot{job, std::nullopt};
  workers_.emplace(
      job.id, std::jthread([this, id = job.id, seqs = std::move(sequences), svc = std::move(service)](
          std::stop_token stop) mutable { run(stop, id, std::move(seqs), std::move(svc)); }));
  return job;
}

void JobRegistry::run(std::stop_token stop, std::string id, std::vector<std::string> sequences,
                      std::shared_ptr<AlignmentService> service) {
  std::vector<std::size_t> rows;
  {
    std::lock_guard lock(mutex_);
    Slot& s = jobs_.at(id);
    s.job.status = JobStatus::Running;
    rows = s.job.rows;
  }
  std::vector<ReportLine> report;
  std::optional<std::string> failure;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (stop.stop_requested()) {
      failure = "cancelled";
      break;
    }
    try {
      AlignmentHit hit = service->align(sequences[i]);
      report.push_back({rows[i], std::move(hit.summary), hit.score});
    } catch (const std::exception& e) {
      failure = e.what();
      break;
    } catch (...) {
      failure = "alignment service failed";
      break;
    }
  }
  std::lock_guard lock(mutex_);
  Slot& s = jobs_.at(id);
  if (failure) {
    s.job.status = JobStatus::Failed;
    s.job.diagnostic = std::move(failure);
  } else {
    s.job.status = JobStatus::Done;
    s.job.report = std::move(report);
  }
  s.finished = Clock::now();
}

EnrichmentJob JobRegistry::poll(const std::string& id) {
  std::lock_guard lock(mutex_);
  purge_locked();
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "unknown enrichment job '" + id + "'");
  return it->second.job;
}

std::size_t JobRegistry::size() {
  std::lock_guard lock(mutex_);
  purge_locked();
  return jobs_.size();
}

void JobRegistry::purge_locked() {
  // A finished worker no longer needs the lock, so joining here is safe.
  const auto now = Clock::now();
  for (auto it = jobs_.begin(); it != jobs_.end();) {
    if (it->second.finished && now - *it->second.finished >= expiry_) {
      workers_.erase(it->first);
      it = jobs_.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace ontoquery
