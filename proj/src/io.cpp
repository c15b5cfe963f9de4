#include "boss/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace boss {

using nlohmann::json;

namespace {

json method_report_json(const MethodReport& mr) {
  json j;
  j["method"] = method_name(mr.spec.method);
  j["selector"] = selector_name(mr.spec.selector);
  if (mr.skipped) {
    j["skipped"] = true;
    j["note"] = mr.note;
    return j;
  }
  j["rmse_mean"] = mr.rmse_mean;
  j["rmse_se"] = mr.rmse_se;
  j["pct_worse"] = mr.pct_worse;
  j["rel_efficiency"] = mr.rel_efficiency;
  j["sparsistency"] = mr.sparsistency;
  j["extra_variables"] = mr.extra;
  j["avg_size"] = mr.avg_size;
  if (!mr.note.empty()) j["note"] = mr.note;
  return j;
}

}  // namespace

std::string sim_report_to_json(const SimReport& report) {
  json j;
  j["config"] = {{"design", design_name(report.config.design)},
                 {"n", report.config.n},
                 {"p", report.config.p},
                 {"rho", report.config.rho},
                 {"snr", report.config.snr},
                 {"reps", report.config.reps},
                 {"seed", report.config.seed},
                 {"cv_folds", report.config.cv_folds},
                 {"use_true_noise", report.config.use_true_noise}};
  j["sigma"] = report.sigma;
  j["oracle_rmse_mean"] = report.oracle_rmse_mean;
  j["null_rmse_mean"] = report.null_rmse_mean;
  j["full_rmse_mean"] = report.full_rmse_mean;
  j["full_reduced"] = report.full_reduced;
  j["methods"] = json::array();
  for (const MethodReport& mr : report.methods) j["methods"].push_back(method_report_json(mr));
  return j.dump(2) + "\n";
}

std::string sim_report_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "n,snr,p,method,selector,rmse_mean,rmse_se,pct_worse,rel_efficiency,"
         "sparsistency,extra_variables,avg_size\n";
  for (const MethodReport& mr : report.methods) {
    if (mr.skipped) continue;
    out << report.config.n << ',' << report.config.snr << ',' << report.config.p << ','
        << method_name(mr.spec.method) << ',' << selector_name(mr.spec.selector) << ','
        << mr.rmse_mean << ',' << mr.rmse_se << ',' << mr.pct_worse << ','
        << mr.rel_efficiency << ',' << mr.sparsistency << ',' << mr.extra << ','
        << mr.avg_size << '\n';
  }
  return out.str();
}

std::string sim_report_table(const SimReport& report) {
  std::ostringstream out;
  out << "design=" << design_name(report.config.design) << " n=" << report.config.n
      << " p=" << report.config.p << " rho=" << report.config.rho
      << " snr=" << report.config.snr << " reps=" << report.config.reps
      << " sigma=" << std::setprecision(4) << report.sigma << "\n";
  out << std::left << std::setw(18) << "method" << std::right << std::setw(10) << "rmse"
      << std::setw(10) << "%worse" << std::setw(8) << "eff" << std::setw(9) << "tp"
      << std::setw(9) << "extra" << std::setw(9) << "size" << std::setw(10) << "sec"
      << "\n";
  out << std::fixed;
  for (const MethodReport& mr : report.methods) {
    out << std::left << std::setw(18) << mr.spec.label() << std::right;
    if (mr.skipped) {
      out << "  skipped: " << mr.note << "\n";
      continue;
    }
    out << std::setprecision(4) << std::setw(10) << mr.rmse_mean << std::setprecision(1)
        << std::setw(10) << mr.pct_worse << std::setprecision(2) << std::setw(8)
        << mr.rel_efficiency << std::setprecision(2) << std::setw(9) << mr.sparsistency
        << std::setw(9) << mr.extra << std::setprecision(1) << std::setw(9) << mr.avg_size
        << std::setprecision(2) << std::setw(10) << mr.seconds << "\n";
  }
  out << "oracle rmse " << std::setprecision(4) << report.oracle_rmse_mean << ", null "
      << report.null_rmse_mean << ", full " << report.full_rmse_mean
      << (report.full_reduced ? " (reduced)" : "") << "\n";
  return out.str();
}

std::string loo_report_to_json(const LooReport& report) {
  json j;
  j["n"] = report.n;
  j["entries"] = json::array();
  for (const LooEntryReport& er : report.entries) {
    json e;
    e["method"] = method_name(er.spec.method);
    e["selector"] = selector_name(er.spec.selector);
    if (er.skipped) {
      e["skipped"] = true;
      e["note"] = er.note;
    } else {
      e["rmse"] = er.rmse;
      e["avg_predictors"] = er.avg_predictors;
      if (!er.note.empty()) e["note"] = er.note;
    }
    j["entries"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string loo_report_table(const LooReport& report) {
  std::ostringstream out;
  out << "leave-one-out over n=" << report.n << "\n";
  out << std::left << std::setw(18) << "method" << std::right << std::setw(12) << "rmse"
      << std::setw(14) << "#predictors" << std::setw(12) << "sec/fit"
      << "\n";
  out << std::fixed;
  for (const LooEntryReport& er : report.entries) {
    out << std::left << std::setw(18) << er.spec.label() << std::right;
    if (er.skipped) {
      out << "  skipped: " << er.note << "\n";
      continue;
    }
    out << std::setprecision(3) << std::setw(12) << er.rmse << std::setw(14)
        << er.avg_predictors << std::setprecision(4) << std::setw(12) << er.avg_seconds;
    if (!er.note.empty()) out << "  (" << er.note << ")";
    out << "\n";
  }
  return out.str();
}

std::string lbs_report_to_json(const LbsCompareReport& report) {
  json j;
  j["lambda_max"] = report.lambda_max;
  j["lambda_min"] = report.lambda_min;
  j["lbs_more"] = report.more;
  j["lbs_fewer"] = report.fewer;
  j["equal"] = report.equal;
  j["bs"] = method_report_json(report.bs);
  j["lbs"] = method_report_json(report.lbs);
  j["bs_size_freq"] = report.bs_size_freq;
  j["lbs_size_freq"] = report.lbs_size_freq;
  return j.dump(2) + "\n";
}

std::string lbs_report_table(const LbsCompareReport& report) {
  std::ostringstream out;
  const int total = report.more + report.fewer + report.equal;
  out << std::fixed << std::setprecision(4);
  out << "lambda grid: [" << report.lambda_min << ", " << report.lambda_max << "]\n";
  out << "selected-size comparison over " << total << " replications: LBS more in "
      << report.more << ", fewer in " << report.fewer << ", equal in " << report.equal
      << "\n";
  out << std::setprecision(2);
  out << "bs : rmse " << report.bs.rmse_mean << "  %worse " << report.bs.pct_worse
      << "  eff " << report.bs.rel_efficiency << "  tp " << report.bs.sparsistency
      << "  extra " << report.bs.extra << "\n";
  out << "lbs: rmse " << report.lbs.rmse_mean << "  %worse " << report.lbs.pct_worse
      << "  eff " << report.lbs.rel_efficiency << "  tp " << report.lbs.sparsistency
      << "  extra " << report.lbs.extra << "\n";
  out << "size frequencies (%), size: bs / lbs\n";
  for (size_t k = 0; k < report.bs_size_freq.size(); ++k) {
    if (report.bs_size_freq[k] == 0.0 && report.lbs_size_freq[k] == 0.0) continue;
    out << "  " << k << ": " << report.bs_size_freq[k] << " / " << report.lbs_size_freq[k]
        << "\n";
  }
  return out.str();
}

std::string selection_to_json(const SelectionResult& sel, const Dataset& data) {
  json j;
  j["k_selected"] = sel.k_selected;
  j["intercept"] = sel.intercept;
  j["support"] = json::array();
  for (int idx : sel.support) {
    json term;
    term["index"] = idx;
    term["name"] = idx < static_cast<int>(data.names.size()) ? data.names[idx]
                                                             : "x" + std::to_string(idx);
    term["coefficient"] = sel.coefficients[idx];
    j["support"].push_back(term);
  }
  if (sel.trace.values.size() > 0) {
    j["criterion"] = criterion_name(sel.trace.criterion);
    j["df_source"] = df_source_name(sel.trace.df_source);
    j["trace"] = std::vector<double>(sel.trace.values.data(),
                                     sel.trace.values.data() + sel.trace.values.size());
  }
  if (sel.cv_errors.size() > 0) {
    j["cv_errors"] = std::vector<double>(sel.cv_errors.data(),
                                         sel.cv_errors.data() + sel.cv_errors.size());
  }
  if (sel.noise.mu_hat.size() > 0) {
    j["sigma_hat"] = sel.noise.sigma_hat;
    j["noise_source"] = sel.noise.source == NoiseEstimate::Source::FullOls    ? "full-ols"
                        : sel.noise.source == NoiseEstimate::Source::LassoReid ? "lasso-reid"
                                                                               : "known";
  }
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open for writing: " + path);
  out << content;
}

}  // namespace boss
