#include "toruswell/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "toruswell/version.hpp"

namespace toruswell::report {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json num(double v) { return json(fmt17(v)); }

double parse_num(const json& j) {
    if (j.is_number()) return j.get<double>();
    return std::strtod(j.get<std::string>().c_str(), nullptr);
}

json scalar_field_to_json(const spectral::ScalarField& g) {
    json records = json::array();
    g.for_each_mode([&](int m, int n, std::complex<double> c) {
        if (std::abs(c) <= 1e-15) return;
        json rec = json::array();
        rec.push_back(m);
        rec.push_back(n);
        rec.push_back(num(c.real()));
        rec.push_back(num(c.imag()));
        records.push_back(std::move(rec));
    });
    json out;
    out["max_mode"] = g.max_mode();
    out["truncated"] = g.truncated();
    out["modes"] = std::move(records);
    return out;
}

spectral::ScalarField scalar_field_from_json(const json& j) {
    spectral::ScalarField g(j.at("max_mode").get<int>());
    if (j.value("truncated", false)) g.mark_truncated();
    for (const auto& rec : j.at("modes")) {
        const int m = rec.at(0).get<int>();
        const int n = rec.at(1).get<int>();
        const double re = parse_num(rec.at(2));
        const double im = parse_num(rec.at(3));
        // Records list both (m,n) and (-m,-n); writing each once through the
        // symmetric setter is idempotent for Hermitian data.
        g.set_coeff(m, n, {re, im});
    }
    return g;
}

json one_form_to_json(const spectral::OneForm& theta) {
    json out;
    out["dx"] = scalar_field_to_json(theta.dx_comp);
    out["dy"] = scalar_field_to_json(theta.dy_comp);
    return out;
}

json adapted_report_to_json(const adapted::AdaptedReport& rep) {
    json out;
    out["weakly_adapted"] = rep.weakly_adapted;
    out["strongly_adapted"] = rep.strongly_adapted;
    out["geodesible_for_theta"] = rep.geodesible_for_theta;
    out["strongly_geodesible_for_theta"] = rep.strongly_geodesible_for_theta;
    out["pairing_min"] = num(rep.pairing_min);
    out["pairing_certified_lower"] = num(rep.pairing_certified_lower);
    out["closedness_residual"] = num(rep.closedness_residual);
    out["period_residual_x"] = num(rep.period_residual_x);
    out["period_residual_y"] = num(rep.period_residual_y);
    out["interior_residual"] = num(rep.interior_residual);
    out["lie_residual"] = num(rep.lie_residual);
    out["unit_pairing_residual"] = num(rep.unit_pairing_residual);
    out["has_lagrangian_primitive"] = rep.lagrangian_primitive.has_value();
    if (rep.lagrangian_primitive.has_value()) {
        out["primitive_check_residual"] = num(rep.primitive_check_residual);
        out["lagrangian_primitive"] = scalar_field_to_json(*rep.lagrangian_primitive);
    }
    out["tol"] = num(rep.tol);
    out["grid_n"] = rep.grid_n;
    out["truncated"] = rep.truncated;
    return out;
}

json condition_report_to_json(const adapted::ConditionReport& rep) {
    json out;
    out["condition_id"] = adapted::to_string(rep.kind);
    out["k"] = num(rep.k);
    out["residual_inf_norm"] = num(rep.residual_inf_norm);
    out["satisfied"] = rep.satisfied;
    out["r_positive"] = rep.r_positive;
    out["tol"] = num(rep.tol);
    if (rep.open_note.has_value()) out["open_note"] = *rep.open_note;
    return out;
}

json certificate_to_json(const adapted::InfeasibilityCertificate& cert) {
    json out;
    out["kind"] = adapted::to_string(cert.kind);
    out["y_witness"] = num(cert.y_witness);
    out["lower_bound"] = num(cert.lower_bound);
    out["explanation"] = cert.explanation;
    return out;
}

json trajectory_summary_to_json(const wells::Trajectory& traj) {
    json out;
    out["dt"] = num(traj.dt);
    out["recorded_states"] = traj.states.size();
    out["status"] = wells::to_string(traj.status);
    out["blowup_flag"] = traj.blowup_flag;
    out["escape_radius"] = num(traj.escape_radius);
    out["max_energy_drift"] = num(traj.max_energy_drift());
    if (!traj.energy.empty()) {
        out["initial_energy"] = num(traj.energy.front());
        out["final_energy"] = num(traj.energy.back());
    }
    return out;
}

json make_report(const std::string& command, const std::string& status, json inputs,
                 json result) {
    json doc;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    doc["format_version"] = kReportFormatVersion;
    doc["command"] = command;
    doc["status"] = status;
    doc["inputs"] = std::move(inputs);
    doc["result"] = std::move(result);
    return doc;
}

std::string serialize(const json& doc) { return doc.dump(2) + "\n"; }

json parse(const std::string& text) { return json::parse(text); }

void emit(const json& doc, const std::optional<std::string>& path, std::ostream& out) {
    const std::string text = serialize(doc);
    if (!path.has_value()) {
        out << text;
        return;
    }
    std::ofstream file(*path);
    if (!file) throw IoError("cannot open " + *path + " for writing");
    file << text;
    if (!file) throw IoError("write failed for " + *path);
}

}  // namespace toruswell::report
