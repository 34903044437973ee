#pragma once

#include <string>
#include <vector>

#include "ethics2vec/continuous.hpp"
#include "ethics2vec/decision_log.hpp"
#include "ethics2vec/roc.hpp"

namespace e2v {

// Shortest decimal string that round-trips the exact double.
std::string format_double(double v);

// Decision log files: header `score,action,truth`, one record per row,
// actions and truths literally 0 or 1. Reading rejects malformed rows with
// the offending line number; an empty body parses to an empty log (domain
// validation is the caller's job).
void write_decision_log(const std::string& path, const DecisionLog& log);
DecisionLog read_decision_log(const std::string& path);

// ROC points: header `tau,fpr,tpr`.
void write_roc_csv(const std::string& path, const RocCurve& roc);

// Trajectories: header `t,x,u`. The destination is not part of the file, so
// reading takes it as a parameter; dt is inferred from the time column.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path, double destination);

// Per-step trace: header `t,x,u,E1,...,ER`.
void write_trace_csv(const std::string& path, const Trajectory& traj, const EthicsTrace& trace);

// Generic numeric table for experiment outputs.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

} // namespace e2v
