/* btn1d -- solver for a spatially one-dimensional self-regulating
 * transport-network model.
 *
 * The diffusivity field D adapts as the gradient flow of an entropy
 * dissipation under a stationary source/sink distribution S. This header is
 * the C interface of the shared library: opaque handles, integer error
 * codes, out-parameters. Every function returns BTN1D_OK on success; on
 * failure btn1d_last_error() describes what went wrong (thread-local).
 */
#ifndef BTN1D_H
#define BTN1D_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* ---- error codes ---------------------------------------------------- */

enum {
    BTN1D_OK = 0,
    BTN1D_ERR_INVALID_ARGUMENT = 1,  /* bad parameter or malformed config   */
    BTN1D_ERR_DOMAIN_VIOLATION = 2,  /* Phi'' asked outside its domain      */
    BTN1D_ERR_NOT_POINTWISE = 3,     /* pointwise S of a delta-pair source  */
    BTN1D_ERR_NONPOSITIVE_DIFFUSIVITY = 4,
    BTN1D_ERR_SINGULAR_STAGE = 5,    /* implicit stage denominator vanished */
    BTN1D_ERR_ZERO_REFERENCE = 6,    /* relative error against zero norm    */
    BTN1D_ERR_TOUCHDOWN_IN_STUDY = 7,/* convergence run lost positivity     */
    BTN1D_ERR_RANGE = 8,             /* index out of range                  */
    BTN1D_ERR_INTERNAL = 9
};

/* Thread-local message for the most recent failure in this thread. */
const char* btn1d_last_error(void);

const char* btn1d_version(void);

/* ---- entropy models -------------------------------------------------- */

enum {
    BTN1D_ENTROPY_CONSTANT = 0,     /* Phi''(u) = 1                          */
    BTN1D_ENTROPY_EXP_NEG = 1,      /* Phi''(u) = exp(-u)                    */
    BTN1D_ENTROPY_FISHER = 2,       /* Phi''(u) = 1/(u+1), u > -1            */
    BTN1D_ENTROPY_SIN_RATIONAL = 3, /* Phi''(u) = 1/(u^2 (sin u + sigma) + 1) */
    BTN1D_ENTROPY_SQUARE = 4        /* Phi''(u) = u^2                        */
};

typedef struct btn1d_entropy btn1d_entropy;

/* sigma is only read for BTN1D_ENTROPY_SIN_RATIONAL. */
int btn1d_entropy_create(int kind, double sigma, btn1d_entropy** out);
void btn1d_entropy_destroy(btn1d_entropy* e);

/* Phi''(u); BTN1D_ERR_DOMAIN_VIOLATION outside the admissible domain. */
int btn1d_entropy_phi2(const btn1d_entropy* e, double u, double* out);

/* ---- sources ---------------------------------------------------------- */

typedef struct btn1d_source btn1d_source;

/* S(x) = m x + q on [0, length]. */
int btn1d_source_create_linear(double m, double q, double length, btn1d_source** out);
/* S = a delta(x-x0) - b delta(x-x1), a,b > 0, 0 < x0 < x1 < 1. */
int btn1d_source_create_delta_pair(double a, double b, double x0, double x1,
                                   btn1d_source** out);
void btn1d_source_destroy(btn1d_source* s);

int btn1d_source_eval_s(const btn1d_source* s, double x, double* out);
/* Exact primitive R(x); plateau boundaries are right-continuous. */
int btn1d_source_eval_r(const btn1d_source* s, double x, double* out);

/* ---- positivity classification ---------------------------------------- */

/* condition labels returned by the classifiers */
enum {
    BTN1D_COND_NONE = 0,
    BTN1D_COND_SINGLE_SIGN_SOURCE = 1,
    BTN1D_COND_ALIGNED_PRIMITIVE_CONVEXITY = 2,
    BTN1D_COND_BOUNDED_RATIO_DOMINANCE = 3,
    BTN1D_COND_DIVERGENT_PHI_PRIME = 4,
    BTN1D_COND_DIVERGENT_TOUCHDOWN_INTEGRAL = 5,
    BTN1D_COND_ENTROPY_TAIL_RATIO = 6
};

/* Sufficient-condition check that D stays positive for this source/entropy
 * pair. guaranteed = 0 never asserts loss of positivity. The witness text is
 * copied into detail_buf (truncated to detail_len, always NUL-terminated;
 * pass NULL/0 to skip). */
int btn1d_classify_positivity(const btn1d_source* s, const btn1d_entropy* e,
                              int* guaranteed, int* condition, char* detail_buf,
                              size_t detail_len);

/* Per-variant closed-form conditions for the delta system; requires a != b. */
int btn1d_check_delta_conditions(const btn1d_source* s, const btn1d_entropy* e,
                                 int* guaranteed, int* condition, char* detail_buf,
                                 size_t detail_len);

/* ---- time integrator checks ------------------------------------------- */

/* Residuals of the four classical third-order conditions for the built-in
 * 4-stage pair, explicit part then implicit part. */
int btn1d_scheme_order3_residuals(double explicit_res[4], double implicit_res[4]);

/* ---- field solver ------------------------------------------------------ */

typedef struct btn1d_trajectory btn1d_trajectory;

typedef struct {
    int n_intervals;       /* grid intervals (nodes = n_intervals + 1)       */
    double length;         /* domain length; must match a linear source      */
    double dt;
    double t_fin;          /* steps = ceil(t_fin/dt), reached time may exceed */
    double d_init;         /* constant initial diffusivity (>= floor), used
                              when d_init_nodes is NULL                       */
    const double* d_init_nodes; /* optional per-node initial values           */
    int snapshot_every;    /* 0 = automatic cadence (~200 snapshots)          */
    double floor;          /* touchdown floor; 0 = default 1e-10              */
} btn1d_pde_config;

int btn1d_pde_run(const btn1d_source* s, const btn1d_entropy* e,
                  const btn1d_pde_config* cfg, btn1d_trajectory** out);
void btn1d_trajectory_destroy(btn1d_trajectory* t);

int btn1d_trajectory_grid(const btn1d_trajectory* t, int* n_nodes, double* spacing,
                          double* length);
/* Node coordinates; out must hold n_nodes values. */
int btn1d_trajectory_nodes(const btn1d_trajectory* t, double* out);

int btn1d_trajectory_snapshot_count(const btn1d_trajectory* t, int* out);
/* Fetch snapshot idx. Array outputs (d_out, u_out, n_nodes values each) and
 * scalar outputs may each be NULL if not wanted. */
int btn1d_trajectory_snapshot(const btn1d_trajectory* t, int idx, double* time,
                              double* energy, double* min_d, double* d_out, double* u_out);
/* Bound max|u| <= ||S||_1 ||1/D||_1 at snapshot idx. */
int btn1d_trajectory_sup_bound(const btn1d_trajectory* t, int idx, double* lhs,
                               double* rhs, int* satisfied);

/* touched_down: 0 = completed, 1 = touchdown. For completed runs the other
 * outputs are the final time / 0 / nan. cause_buf receives a short label. */
int btn1d_trajectory_termination(const btn1d_trajectory* t, int* touched_down,
                                 double* t_last_valid, double* argmin_x,
                                 double* rejected_min, char* cause_buf, size_t cause_len);

/* ---- delta-system solver ------------------------------------------------ */

typedef struct btn1d_delta_trajectory btn1d_delta_trajectory;

typedef struct {
    double d1_init;
    double d2_init;
    double dt;
    double t_fin;
    int snapshot_every; /* 0 = automatic cadence (~1000 snapshots) */
} btn1d_delta_config;

int btn1d_delta_run(const btn1d_source* s, const btn1d_entropy* e,
                    const btn1d_delta_config* cfg, btn1d_delta_trajectory** out);
void btn1d_delta_trajectory_destroy(btn1d_delta_trajectory* t);

int btn1d_delta_snapshot_count(const btn1d_delta_trajectory* t, int* out);
int btn1d_delta_snapshot(const btn1d_delta_trajectory* t, int idx, double* time,
                         double* d1, double* d2, double* phi2_u_x1);
/* d2_last / d2_rejected bracket the sign change when touched_down = 1. */
int btn1d_delta_termination(const btn1d_delta_trajectory* t, int* touched_down,
                            double* t_last_valid, double* d2_last, double* d2_rejected,
                            char* cause_buf, size_t cause_len);
/* Energy of the two-piece form at snapshot idx. */
int btn1d_delta_energy_at(const btn1d_delta_trajectory* t, int idx, double* out);

/* ---- convergence studies ------------------------------------------------ */

typedef struct btn1d_convergence btn1d_convergence;

/* Space-time study against the closed-form solution (entropy forced to
 * Constant): dt = h per row, h values strictly decreasing divisors of
 * length. */
int btn1d_convergence_pde_exact(const btn1d_source* s, double d_init, double t_fin,
                                double length, const double* h_list, int n_h,
                                btn1d_convergence** out);

/* Time-only study on a fixed grid against a fine-reference run. */
int btn1d_convergence_pde_time(const btn1d_source* s, const btn1d_entropy* e,
                               int n_intervals, double d_init, double t_fin,
                               double length, double dt_ref, const double* dt_list,
                               int n_dt, btn1d_convergence** out);

/* Delta-system time study; produces one series per variable (D1, D2). */
int btn1d_convergence_delta(const btn1d_source* s, const btn1d_entropy* e,
                            double d1_init, double d2_init, double t_fin, double dt_ref,
                            const double* dt_list, int n_dt, btn1d_convergence** out);

void btn1d_convergence_destroy(btn1d_convergence* c);

int btn1d_convergence_series_count(const btn1d_convergence* c, int* out);
int btn1d_convergence_series_label(const btn1d_convergence* c, int series,
                                   char* buf, size_t len);
int btn1d_convergence_row_count(const btn1d_convergence* c, int series, int* out);
/* observed_order is nan where undefined (first row). */
int btn1d_convergence_row(const btn1d_convergence* c, int series, int row, double* h,
                          double* dt, double* t_reached, double* error,
                          double* observed_order);

/* ---- minimum-diffusivity sweep ------------------------------------------ */

typedef struct btn1d_sweep btn1d_sweep;

/* Re-run the configuration for each dt (strictly decreasing) and record
 * where each run stopped and the minimum of D there. */
int btn1d_min_d_sweep(const btn1d_source* s, const btn1d_entropy* e,
                      const btn1d_pde_config* base, const double* dt_list, int n_dt,
                      btn1d_sweep** out);
void btn1d_sweep_destroy(btn1d_sweep* s);

int btn1d_sweep_row_count(const btn1d_sweep* s, int* out);
int btn1d_sweep_row(const btn1d_sweep* s, int row, double* dt, double* t_last,
                    double* min_d, int* touched_down);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BTN1D_H */
