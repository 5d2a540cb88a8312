#include "btn1d.h"

#include <cstring>
#include <limits>
#include <string>

#include "../core/delta_solver.hpp"
#include "../core/diagnostics.hpp"
#include "../core/errors.hpp"
#include "../core/pde_solver.hpp"

using namespace btn1d;

namespace {

thread_local std::string g_last_error;

int map_code(SolverError::Code c) {
    switch (c) {
    case SolverError::Code::InvalidArgument: return BTN1D_ERR_INVALID_ARGUMENT;
    case SolverError::Code::DomainViolation: return BTN1D_ERR_DOMAIN_VIOLATION;
    case SolverError::Code::NotPointwise: return BTN1D_ERR_NOT_POINTWISE;
    case SolverError::Code::NonPositiveDiffusivity: return BTN1D_ERR_NONPOSITIVE_DIFFUSIVITY;
    case SolverError::Code::SingularStage: return BTN1D_ERR_SINGULAR_STAGE;
    case SolverError::Code::ZeroReference: return BTN1D_ERR_ZERO_REFERENCE;
    case SolverError::Code::TouchdownInStudy: return BTN1D_ERR_TOUCHDOWN_IN_STUDY;
    }
    return BTN1D_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const SolverError& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BTN1D_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return BTN1D_ERR_INTERNAL;
    }
}

int fail_invalid(const char* msg) {
    g_last_error = msg;
    return BTN1D_ERR_INVALID_ARGUMENT;
}

void copy_text(const std::string& text, char* buf, size_t len) {
    if (!buf || len == 0) return;
    const size_t n = std::min(text.size(), len - 1);
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
}

} // namespace

struct btn1d_entropy {
    EntropyModel model;
};

struct btn1d_source {
    SourceModel model;
};

struct btn1d_trajectory {
    TrajectoryRecord record;
    SourceModel source;
    EntropyModel entropy;
};

struct btn1d_delta_trajectory {
    DeltaTrajectory traj;
    EntropyModel entropy;
};

struct btn1d_convergence {
    ConvergenceTable table;
};

struct btn1d_sweep {
    std::vector<MinDSweepRow> rows;
};

extern "C" {

const char* btn1d_last_error(void) { return g_last_error.c_str(); }

const char* btn1d_version(void) { return "0.1.0"; }

int btn1d_entropy_create(int kind, double sigma, btn1d_entropy** out) {
    if (!out) return fail_invalid("entropy_create: out is NULL");
    return guarded([&]() {
        EntropyModel m;
        switch (kind) {
        case BTN1D_ENTROPY_CONSTANT: m = EntropyModel::constant(); break;
        case BTN1D_ENTROPY_EXP_NEG: m = EntropyModel::exp_neg(); break;
        case BTN1D_ENTROPY_FISHER: m = EntropyModel::fisher(); break;
        case BTN1D_ENTROPY_SIN_RATIONAL: m = EntropyModel::sin_rational(sigma); break;
        case BTN1D_ENTROPY_SQUARE: m = EntropyModel::square(); break;
        default: throw InvalidArgument("entropy_create: unknown kind");
        }
        *out = new btn1d_entropy{m};
        return BTN1D_OK;
    });
}

void btn1d_entropy_destroy(btn1d_entropy* e) { delete e; }

int btn1d_entropy_phi2(const btn1d_entropy* e, double u, double* out) {
    if (!e || !out) return fail_invalid("entropy_phi2: NULL argument");
    return guarded([&]() {
        *out = e->model.phi2(u);
        return BTN1D_OK;
    });
}

int btn1d_source_create_linear(double m, double q, double length, btn1d_source** out) {
    if (!out) return fail_invalid("source_create_linear: out is NULL");
    return guarded([&]() {
        *out = new btn1d_source{SourceModel::linear(m, q, length)};
        return BTN1D_OK;
    });
}

int btn1d_source_create_delta_pair(double a, double b, double x0, double x1,
                                   btn1d_source** out) {
    if (!out) return fail_invalid("source_create_delta_pair: out is NULL");
    return guarded([&]() {
        *out = new btn1d_source{SourceModel::delta_pair(a, b, x0, x1)};
        return BTN1D_OK;
    });
}

void btn1d_source_destroy(btn1d_source* s) { delete s; }

int btn1d_source_eval_s(const btn1d_source* s, double x, double* out) {
    if (!s || !out) return fail_invalid("source_eval_s: NULL argument");
    return guarded([&]() {
        *out = s->model.eval_S(x);
        return BTN1D_OK;
    });
}

int btn1d_source_eval_r(const btn1d_source* s, double x, double* out) {
    if (!s || !out) return fail_invalid("source_eval_r: NULL argument");
    return guarded([&]() {
        *out = s->model.eval_R(x);
        return BTN1D_OK;
    });
}

namespace {

int condition_code(PositivityCondition c) {
    switch (c) {
    case PositivityCondition::None: return BTN1D_COND_NONE;
    case PositivityCondition::SingleSignSource: return BTN1D_COND_SINGLE_SIGN_SOURCE;
    case PositivityCondition::AlignedPrimitiveConvexity:
        return BTN1D_COND_ALIGNED_PRIMITIVE_CONVEXITY;
    case PositivityCondition::BoundedRatioDominance:
        return BTN1D_COND_BOUNDED_RATIO_DOMINANCE;
    case PositivityCondition::DivergentPhiPrime: return BTN1D_COND_DIVERGENT_PHI_PRIME;
    case PositivityCondition::DivergentTouchdownIntegral:
        return BTN1D_COND_DIVERGENT_TOUCHDOWN_INTEGRAL;
    case PositivityCondition::EntropyTailRatio: return BTN1D_COND_ENTROPY_TAIL_RATIO;
    }
    return BTN1D_COND_NONE;
}

int verdict_out(const PositivityVerdict& v, int* guaranteed, int* condition,
                char* detail_buf, size_t detail_len) {
    if (guaranteed) *guaranteed = v.guaranteed ? 1 : 0;
    if (condition) *condition = condition_code(v.condition);
    copy_text(v.detail, detail_buf, detail_len);
    return BTN1D_OK;
}

PdeRunConfig to_config(const btn1d_source* s, const btn1d_entropy* e,
                       const btn1d_pde_config* cfg) {
    PdeRunConfig c;
    c.n_intervals = cfg->n_intervals;
    c.length = cfg->length;
    c.dt = cfg->dt;
    c.t_fin = cfg->t_fin;
    if (cfg->d_init_nodes) {
        c.d_init = std::vector<double>(cfg->d_init_nodes,
                                       cfg->d_init_nodes + cfg->n_intervals + 1);
    } else {
        c.d_init = cfg->d_init;
    }
    c.source = s->model;
    c.entropy = e->model;
    c.snapshot_every = cfg->snapshot_every;
    c.floor = cfg->floor > 0.0 ? cfg->floor : 1e-10;
    return c;
}

} // namespace

int btn1d_classify_positivity(const btn1d_source* s, const btn1d_entropy* e,
                              int* guaranteed, int* condition, char* detail_buf,
                              size_t detail_len) {
    if (!s || !e) return fail_invalid("classify_positivity: NULL argument");
    return guarded([&]() {
        return verdict_out(classify_positivity(s->model, e->model), guaranteed, condition,
                           detail_buf, detail_len);
    });
}

int btn1d_check_delta_conditions(const btn1d_source* s, const btn1d_entropy* e,
                                 int* guaranteed, int* condition, char* detail_buf,
                                 size_t detail_len) {
    if (!s || !e) return fail_invalid("check_delta_conditions: NULL argument");
    return guarded([&]() {
        return verdict_out(check_delta_conditions(s->model, e->model), guaranteed, condition,
                           detail_buf, detail_len);
    });
}

int btn1d_scheme_order3_residuals(double explicit_res[4], double implicit_res[4]) {
    if (!explicit_res || !implicit_res) {
        return fail_invalid("scheme_order3_residuals: NULL argument");
    }
    return guarded([&]() {
        const OrderConditionReport rep = check_order3(ssp_ldirk3_433());
        for (int i = 0; i < 4; ++i) {
            explicit_res[i] = rep.explicit_residuals[i];
            implicit_res[i] = rep.implicit_residuals[i];
        }
        return BTN1D_OK;
    });
}

int btn1d_pde_run(const btn1d_source* s, const btn1d_entropy* e,
                  const btn1d_pde_config* cfg, btn1d_trajectory** out) {
    if (!s || !e || !cfg || !out) return fail_invalid("pde_run: NULL argument");
    return guarded([&]() {
        TrajectoryRecord rec = run(to_config(s, e, cfg));
        *out = new btn1d_trajectory{std::move(rec), s->model, e->model};
        return BTN1D_OK;
    });
}

void btn1d_trajectory_destroy(btn1d_trajectory* t) { delete t; }

int btn1d_trajectory_grid(const btn1d_trajectory* t, int* n_nodes, double* spacing,
                          double* length) {
    if (!t) return fail_invalid("trajectory_grid: NULL trajectory");
    if (n_nodes) *n_nodes = t->record.grid.nodes();
    if (spacing) *spacing = t->record.grid.spacing();
    if (length) *length = t->record.grid.length;
    return BTN1D_OK;
}

int btn1d_trajectory_nodes(const btn1d_trajectory* t, double* out) {
    if (!t || !out) return fail_invalid("trajectory_nodes: NULL argument");
    for (int i = 0; i < t->record.grid.nodes(); ++i) out[i] = t->record.grid.node(i);
    return BTN1D_OK;
}

int btn1d_trajectory_snapshot_count(const btn1d_trajectory* t, int* out) {
    if (!t || !out) return fail_invalid("trajectory_snapshot_count: NULL argument");
    *out = static_cast<int>(t->record.snapshots.size());
    return BTN1D_OK;
}

namespace {

int check_snapshot_index(size_t count, int idx) {
    if (idx < 0 || static_cast<size_t>(idx) >= count) {
        g_last_error = "snapshot index out of range";
        return BTN1D_ERR_RANGE;
    }
    return BTN1D_OK;
}

} // namespace

int btn1d_trajectory_snapshot(const btn1d_trajectory* t, int idx, double* time,
                              double* energy, double* min_d, double* d_out, double* u_out) {
    if (!t) return fail_invalid("trajectory_snapshot: NULL trajectory");
    if (int rc = check_snapshot_index(t->record.snapshots.size(), idx)) return rc;
    const PdeSnapshot& s = t->record.snapshots[idx];
    if (time) *time = s.t;
    if (energy) *energy = s.energy;
    if (min_d) *min_d = s.min_d;
    if (d_out) std::memcpy(d_out, s.d.data(), s.d.size() * sizeof(double));
    if (u_out) std::memcpy(u_out, s.u.data(), s.u.size() * sizeof(double));
    return BTN1D_OK;
}

int btn1d_trajectory_sup_bound(const btn1d_trajectory* t, int idx, double* lhs,
                               double* rhs, int* satisfied) {
    if (!t) return fail_invalid("trajectory_sup_bound: NULL trajectory");
    if (int rc = check_snapshot_index(t->record.snapshots.size(), idx)) return rc;
    return guarded([&]() {
        const PdeSnapshot& s = t->record.snapshots[idx];
        DiffusivityField d(t->record.grid, s.d);
        NodalField u(t->record.grid, s.u);
        const BoundReport rep = sup_bound_check(d, u, t->source);
        if (lhs) *lhs = rep.lhs;
        if (rhs) *rhs = rep.rhs;
        if (satisfied) *satisfied = rep.satisfied ? 1 : 0;
        return BTN1D_OK;
    });
}

int btn1d_trajectory_termination(const btn1d_trajectory* t, int* touched_down,
                                 double* t_last_valid, double* argmin_x,
                                 double* rejected_min, char* cause_buf, size_t cause_len) {
    if (!t) return fail_invalid("trajectory_termination: NULL trajectory");
    const TrajectoryRecord& rec = t->record;
    if (touched_down) *touched_down = rec.touched_down ? 1 : 0;
    if (rec.touched_down) {
        const TouchdownInfo& info = *rec.touchdown;
        if (t_last_valid) *t_last_valid = info.t_last_valid;
        if (argmin_x) *argmin_x = info.argmin_x;
        if (rejected_min) *rejected_min = info.rejected_min;
        copy_text(to_string(info.cause), cause_buf, cause_len);
    } else {
        if (t_last_valid) *t_last_valid = rec.last().t;
        if (argmin_x) *argmin_x = rec.grid.node(
            DiffusivityField(rec.grid, rec.last().d).argmin_index());
        if (rejected_min) *rejected_min = std::numeric_limits<double>::quiet_NaN();
        copy_text("completed", cause_buf, cause_len);
    }
    return BTN1D_OK;
}

int btn1d_delta_run(const btn1d_source* s, const btn1d_entropy* e,
                    const btn1d_delta_config* cfg, btn1d_delta_trajectory** out) {
    if (!s || !e || !cfg || !out) return fail_invalid("delta_run: NULL argument");
    return guarded([&]() {
        DeltaRunConfig c;
        c.d1_init = cfg->d1_init;
        c.d2_init = cfg->d2_init;
        c.dt = cfg->dt;
        c.t_fin = cfg->t_fin;
        c.snapshot_every = cfg->snapshot_every;
        DeltaTrajectory traj = run_delta(s->model, e->model, c);
        *out = new btn1d_delta_trajectory{std::move(traj), e->model};
        return BTN1D_OK;
    });
}

void btn1d_delta_trajectory_destroy(btn1d_delta_trajectory* t) { delete t; }

int btn1d_delta_snapshot_count(const btn1d_delta_trajectory* t, int* out) {
    if (!t || !out) return fail_invalid("delta_snapshot_count: NULL argument");
    *out = static_cast<int>(t->traj.snapshots.size());
    return BTN1D_OK;
}

int btn1d_delta_snapshot(const btn1d_delta_trajectory* t, int idx, double* time,
                         double* d1, double* d2, double* phi2_u_x1) {
    if (!t) return fail_invalid("delta_snapshot: NULL trajectory");
    if (int rc = check_snapshot_index(t->traj.snapshots.size(), idx)) return rc;
    const DeltaSnapshot& s = t->traj.snapshots[idx];
    if (time) *time = s.t;
    if (d1) *d1 = s.d1;
    if (d2) *d2 = s.d2;
    if (phi2_u_x1) *phi2_u_x1 = s.phi2_u_x1;
    return BTN1D_OK;
}

int btn1d_delta_termination(const btn1d_delta_trajectory* t, int* touched_down,
                            double* t_last_valid, double* d2_last, double* d2_rejected,
                            char* cause_buf, size_t cause_len) {
    if (!t) return fail_invalid("delta_termination: NULL trajectory");
    const DeltaTrajectory& traj = t->traj;
    if (touched_down) *touched_down = traj.touched_down ? 1 : 0;
    if (traj.touched_down) {
        const DeltaTouchdownInfo& info = *traj.touchdown;
        if (t_last_valid) *t_last_valid = info.t_last_valid;
        if (d2_last) *d2_last = info.d2_last;
        if (d2_rejected) *d2_rejected = info.d2_rejected;
        copy_text(to_string(info.cause), cause_buf, cause_len);
    } else {
        if (t_last_valid) *t_last_valid = traj.last().t;
        if (d2_last) *d2_last = traj.last().d2;
        if (d2_rejected) *d2_rejected = std::numeric_limits<double>::quiet_NaN();
        copy_text("completed", cause_buf, cause_len);
    }
    return BTN1D_OK;
}

int btn1d_delta_energy_at(const btn1d_delta_trajectory* t, int idx, double* out) {
    if (!t || !out) return fail_invalid("delta_energy_at: NULL argument");
    if (int rc = check_snapshot_index(t->traj.snapshots.size(), idx)) return rc;
    return guarded([&]() {
        const DeltaSnapshot& s = t->traj.snapshots[idx];
        *out = delta_energy(DeltaState{s.d1, s.d2}, t->traj.params, t->entropy);
        return BTN1D_OK;
    });
}

int btn1d_convergence_pde_exact(const btn1d_source* s, double d_init, double t_fin,
                                double length, const double* h_list, int n_h,
                                btn1d_convergence** out) {
    if (!s || !h_list || n_h < 1 || !out) {
        return fail_invalid("convergence_pde_exact: bad argument");
    }
    return guarded([&]() {
        PdeExactStudy study;
        study.source = s->model;
        study.d_init = d_init;
        study.t_fin = t_fin;
        study.length = length;
        study.h_list.assign(h_list, h_list + n_h);
        *out = new btn1d_convergence{convergence_pde_exact(study)};
        return BTN1D_OK;
    });
}

int btn1d_convergence_pde_time(const btn1d_source* s, const btn1d_entropy* e,
                               int n_intervals, double d_init, double t_fin,
                               double length, double dt_ref, const double* dt_list,
                               int n_dt, btn1d_convergence** out) {
    if (!s || !e || !dt_list || n_dt < 1 || !out) {
        return fail_invalid("convergence_pde_time: bad argument");
    }
    return guarded([&]() {
        PdeTimeStudy study;
        study.source = s->model;
        study.entropy = e->model;
        study.n_intervals = n_intervals;
        study.d_init = d_init;
        study.t_fin = t_fin;
        study.length = length;
        study.dt_ref = dt_ref;
        study.dt_list.assign(dt_list, dt_list + n_dt);
        *out = new btn1d_convergence{convergence_pde_time(study)};
        return BTN1D_OK;
    });
}

int btn1d_convergence_delta(const btn1d_source* s, const btn1d_entropy* e,
                            double d1_init, double d2_init, double t_fin, double dt_ref,
                            const double* dt_list, int n_dt, btn1d_convergence** out) {
    if (!s || !e || !dt_list || n_dt < 1 || !out) {
        return fail_invalid("convergence_delta: bad argument");
    }
    return guarded([&]() {
        DeltaTimeStudy study;
        study.source = s->model;
        study.entropy = e->model;
        study.d1_init = d1_init;
        study.d2_init = d2_init;
        study.t_fin = t_fin;
        study.dt_ref = dt_ref;
        study.dt_list.assign(dt_list, dt_list + n_dt);
        *out = new btn1d_convergence{convergence_delta(study)};
        return BTN1D_OK;
    });
}

void btn1d_convergence_destroy(btn1d_convergence* c) { delete c; }

int btn1d_convergence_series_count(const btn1d_convergence* c, int* out) {
    if (!c || !out) return fail_invalid("convergence_series_count: NULL argument");
    *out = static_cast<int>(c->table.series.size());
    return BTN1D_OK;
}

int btn1d_convergence_series_label(const btn1d_convergence* c, int series, char* buf,
                                   size_t len) {
    if (!c) return fail_invalid("convergence_series_label: NULL argument");
    if (int rc = check_snapshot_index(c->table.series.size(), series)) return rc;
    copy_text(c->table.series[series].label, buf, len);
    return BTN1D_OK;
}

int btn1d_convergence_row_count(const btn1d_convergence* c, int series, int* out) {
    if (!c || !out) return fail_invalid("convergence_row_count: NULL argument");
    if (int rc = check_snapshot_index(c->table.series.size(), series)) return rc;
    *out = static_cast<int>(c->table.series[series].rows.size());
    return BTN1D_OK;
}

int btn1d_convergence_row(const btn1d_convergence* c, int series, int row, double* h,
                          double* dt, double* t_reached, double* error,
                          double* observed_order) {
    if (!c) return fail_invalid("convergence_row: NULL argument");
    if (int rc = check_snapshot_index(c->table.series.size(), series)) return rc;
    if (int rc = check_snapshot_index(c->table.series[series].rows.size(), row)) return rc;
    const ConvergenceRow& r = c->table.series[series].rows[row];
    if (h) *h = r.h;
    if (dt) *dt = r.dt;
    if (t_reached) *t_reached = r.t_reached;
    if (error) *error = r.error;
    if (observed_order) {
        *observed_order =
            r.observed_order ? *r.observed_order : std::numeric_limits<double>::quiet_NaN();
    }
    return BTN1D_OK;
}

int btn1d_min_d_sweep(const btn1d_source* s, const btn1d_entropy* e,
                      const btn1d_pde_config* base, const double* dt_list, int n_dt,
                      btn1d_sweep** out) {
    if (!s || !e || !base || !dt_list || n_dt < 1 || !out) {
        return fail_invalid("min_d_sweep: bad argument");
    }
    return guarded([&]() {
        std::vector<double> dts(dt_list, dt_list + n_dt);
        *out = new btn1d_sweep{min_d_sweep(to_config(s, e, base), dts)};
        return BTN1D_OK;
    });
}

void btn1d_sweep_destroy(btn1d_sweep* s) { delete s; }

int btn1d_sweep_row_count(const btn1d_sweep* s, int* out) {
    if (!s || !out) return fail_invalid("sweep_row_count: NULL argument");
    *out = static_cast<int>(s->rows.size());
    return BTN1D_OK;
}

int btn1d_sweep_row(const btn1d_sweep* s, int row, double* dt, double* t_last,
                    double* min_d, int* touched_down) {
    if (!s) return fail_invalid("sweep_row: NULL argument");
    if (int rc = check_snapshot_index(s->rows.size(), row)) return rc;
    const MinDSweepRow& r = s->rows[row];
    if (dt) *dt = r.dt;
    if (t_last) *t_last = r.t_last;
    if (min_d) *min_d = r.min_d;
    if (touched_down) *touched_down = r.touched_down ? 1 : 0;
    return BTN1D_OK;
}

} // extern "C"
