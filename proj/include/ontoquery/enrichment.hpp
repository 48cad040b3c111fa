#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ontoquery/answer.hpp"

namespace ontoquery {

struct EnrichableColumn {
  std::size_t column_index = 0;
  std::string reason;

  bool operator==(const EnrichableColumn&) const = default;
};

/// Non-empty and drawn from {A,C,G,T,N}, case-insensitive.
bool is_nucleotide_sequence(std::string_view text) noexcept;

/// Datatype columns reached through a property marked as sequence-bearing,
/// holding at least one nucleotide-sequence value. Ordered by column.
std::vector<EnrichableColumn> detect_enrichable_columns(const ResultTable& table,
                                                        const SchemaIndex& schema);

struct AlignmentHit {
  std::string summary;
  double score = 0;
};

class AlignmentService {
 public:
  virtual ~AlignmentService() = default;
  virtual std::string name() const = 0;
  /// May block; throws on failure.
  virtual AlignmentHit align(const std::string& sequence) = 0;
};

/// In-process and deterministic: score is the sequence length, summary the
/// reversed sequence. With `failure` set every call throws it.
class StubAlignmentService : public AlignmentService {
 public:
  explicit StubAlignmentService(std::optional<std::string> failure = std::nullopt)
      : failure_(std::move(failure)) {}
  std::string name() const override { return "stub"; }
  AlignmentHit align(const std::string& sequence) override;

 private:
  std::optional<std::string> failure_;
};

struct BlastOptions {
  std::string base_url = "https://blast.ncbi.nlm.nih.gov";
  std::string path = "/Blast.cgi";
  std::string program = "blastn";
  std::string database = "nt";
  std::chrono::seconds timeout{30};
  std::chrono::seconds poll_interval{10};
  int max_polls = 60;
  std::string api_key;  // empty: read NCBI_API_KEY from the environment
};

/// Client for the NCBI BLAST URL API (Put, poll SearchInfo, Get Tabular).
/// Reports the top hit's subject id and bit score.
class NcbiBlastService : public AlignmentService {
 public:
  explicit NcbiBlastService(BlastOptions options = {});
  std::string name() const override { return "ncbi-blast"; }
  AlignmentHit align(const std::string& sequence) override;

 private:
  BlastOptions options_;
};

enum class JobStatus { Pending, Running, Done, Failed };
std::string_view job_status_name(JobStatus s) noexcept;

struct ReportLine {
  std::size_t row = 0;
  std::string summary;
  double score = 0;

  bool operator==(const ReportLine&) const = default;
};

struct EnrichmentJob {
  std::string id;
  JobStatus status = JobStatus::Pending;
  std::size_t column = 0;
  std::vector<std::size_t> rows;  // requested rows: non-empty values only
  std::vector<ReportLine> report;
  std::optional<std::string> diagnostic;
};

/// Thread-safe registry of asynchronous enrichment jobs. Each job runs on
/// its own thread and calls the service once per requested row, in order.
/// Finished jobs are forgotten after `expiry`.
class JobRegistry {
 public:
  explicit JobRegistry(std::chrono::seconds expiry = std::chrono::hours(1));
  ~JobRegistry();
  JobRegistry(const JobRegistry&) = delete;
  JobRegistry& operator=(const JobRegistry&) = delete;

  /// Returns the pending job immediately. Throws Error(UnflaggedColumn)
  /// unless detect_enrichable_columns flags `column` for `table`.
  EnrichmentJob submit(const EnrichableColumn& column, const ResultTable& table,
                       const SchemaIndex& schema, std::shared_ptr<AlignmentService> service);

  /// Throws Error(UnknownJob) for unknown or expired ids.
  EnrichmentJob poll(const std::string& id);

  std::size_t size();

 private:
  using Clock = std::chrono::steady_clock;
  struct Slot {
    EnrichmentJob job;
    std::optional<Clock::time_point> finished;
  };

  void run(std::stop_token stop, std::string id, std::vector<std::string> sequences,
           std::shared_ptr<AlignmentService> service);
  void purge_locked();

  std::chrono::seconds expiry_;
  std::mutex mutex_;
  std::map<std::string, Slot> jobs_;
  std::map<std::string, std::jthread> workers_;
};

}  // namespace ontoquery
