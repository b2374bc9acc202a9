#include "mrcs/mdp_solver.hpp"

#include <chrono>

#include "mrcs/errors.hpp"

namespace mrcs {

namespace {

// Expands the per-CF1 rows of each base action to full num_cf x num_cf
// matrices so the backup is a plain matrix product.
std::vector<Eigen::MatrixXd> expand_cf(const MdpModel& m) {
    const StateSpace& sp = m.params.space;
    std::vector<Eigen::MatrixXd> full(sp.num_base_actions());
    for (int a = 0; a < sp.num_base_actions(); ++a) {
        Eigen::MatrixXd t(sp.num_cf(), sp.num_cf());
        for (int cf = 0; cf < sp.num_cf(); ++cf)
            t.row(cf) = m.cf_trans[a].row(sp.cf1_of(cf));
        full[a] = std::move(t);
    }
    return full;
}

Eigen::MatrixXd to_matrix(const StateSpace& sp, const Eigen::VectorXd& flat) {
    Eigen::MatrixXd m(sp.num_cr(), sp.num_cf());
    for (int cr = 0; cr < sp.num_cr(); ++cr)
        for (int cf = 0; cf < sp.num_cf(); ++cf) m(cr, cf) = flat(sp.flat(cr, cf));
    return m;
}

}  // namespace

void SolveOptions::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("solver: gamma must lie in (0, 1)");
    if (!(epsilon > 0.0)) throw ConfigError("solver: epsilon must be positive");
    if (max_iterations < 1) throw ConfigError("solver: max_iterations must be positive");
}

SolveResult solve(const MdpModel& model, const SolveOptions& options) {
    options.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const StateSpace& sp = model.params.space;
    const int ncr = sp.num_cr(), ncf = sp.num_cf();
    const double gamma = options.gamma;
    const auto cf_full = expand_cf(model);

    SolveResult res;
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(ncr, ncf);
    Eigen::MatrixXd w(ncr, ncf), q(ncr, ncf), best(ncr, ncf);
    Eigen::MatrixXi arg(ncr, ncf);

    const std::uint64_t mul_cr = static_cast<std::uint64_t>(ncr) * ncr * ncf;
    const std::uint64_t mul_cf = static_cast<std::uint64_t>(ncr) * ncf * ncf;

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        // Q_a = (reward_base + gamma * CR * V) * T_a' : the CR contraction is
        // shared across actions, the CF contraction is per action.
        w.noalias() = model.cr_trans * v;
        res.multiplies += mul_cr;
        w = model.reward_base + gamma * w;
        bool first = true;
        for (int a = 0; a < sp.num_actions; ++a) {
            if (sp.is_continue_action(a)) {
                q = w;  // identity CF transition
            } else {
                q.noalias() = w * cf_full[a].transpose();
                res.multiplies += mul_cf;
            }
            if (first) {
                best = q;
                arg.setConstant(a);
                first = false;
            } else {
                for (int cf = 0; cf < ncf; ++cf)
                    for (int cr = 0; cr < ncr; ++cr)
                        if (q(cr, cf) > best(cr, cf)) {
                            best(cr, cf) = q(cr, cf);
                            arg(cr, cf) = a;
                        }
            }
        }
        res.residual = (best - v).cwiseAbs().maxCoeff();
        res.residual_history.push_back(res.residual);
        v = best;
        res.iterations = iter;
        if (res.residual <= options.epsilon) {
            res.value.resize(sp.num_states());
            res.policy.resize(sp.num_states());
            for (int cr = 0; cr < ncr; ++cr)
                for (int cf = 0; cf < ncf; ++cf) {
                    res.value(sp.flat(cr, cf)) = v(cr, cf);
                    res.policy[sp.flat(cr, cf)] = arg(cr, cf);
                }
            res.seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            return res;
        }
    }
    throw SolverError("solver: no convergence within max_iterations", res.residual);
}

Eigen::VectorXd factored_backup(const MdpModel& model, const Eigen::VectorXd& value,
                                int action, double gamma) {
    const StateSpace& sp = model.params.space;
    if (value.size() != sp.num_states())
        throw ShapeError("solver: value vector size does not match the state space");
    if (action < 0 || action >= sp.num_actions)
        throw ConfigError("solver: action id out of range");
    const Eigen::MatrixXd v = to_matrix(sp, value);
    const Eigen::MatrixXd w = model.reward_base + gamma * (model.cr_trans * v);
    Eigen::MatrixXd q;
    if (sp.is_continue_action(action)) {
        q = w;
    } else {
        Eigen::MatrixXd t(sp.num_cf(), sp.num_cf());
        for (int cf = 0; cf < sp.num_cf(); ++cf)
            t.row(cf) = model.cf_trans[action].row(sp.cf1_of(cf));
        q = w * t.transpose();
    }
    Eigen::VectorXd out(sp.num_states());
    for (int cr = 0; cr < sp.num_cr(); ++cr)
        for (int cf = 0; cf < sp.num_cf(); ++cf) out(sp.flat(cr, cf)) = q(cr, cf);
    return out;
}

std::vector<int> greedy_policy(const MdpModel& model, const Eigen::VectorXd& value,
                               double gamma) {
    const StateSpace& sp = model.params.space;
    std::vector<int> policy(sp.num_states());
    Eigen::VectorXd best;
    for (int a = 0; a < sp.num_actions; ++a) {
        const Eigen::VectorXd q = factored_backup(model, value, a, gamma);
        if (a == 0) {
            best = q;
            std::fill(policy.begin(), policy.end(), 0);
        } else {
            for (int s = 0; s < sp.num_states(); ++s)
                if (q(s) > best(s)) {
                    best(s) = q(s);
                    policy[s] = a;
                }
        }
    }
    return policy;
}

DenseMdp to_dense(const MdpModel& model) {
    const StateSpace& sp = model.params.space;
    DenseMdp d;
    d.reward.resize(sp.num_states(), sp.num_actions);
    d.trans.reserve(sp.num_actions);
    for (int a = 0; a < sp.num_actions; ++a) {
        d.trans.push_back(dense_stm(model, a));
        for (int s = 0; s < sp.num_states(); ++s) d.reward(s, a) = model.reward(s, a);
    }
    return d;
}

SolveResult solve_dense(const DenseMdp& mdp, const SolveOptions& options) {
    options.validate();
    const int n = mdp.num_states(), na = mdp.num_actions();
    if (n < 1 || na < 1) throw ShapeError("solver: empty dense MDP");
    for (const auto& t : mdp.trans)
        if (t.rows() != n || t.cols() != n)
            throw ShapeError("solver: dense transition matrix shape mismatch");

    SolveResult res;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd best(n), q(n);
    std::vector<int> arg(n, 0);
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        for (int a = 0; a < na; ++a) {
            q = mdp.reward.col(a) + options.gamma * (mdp.trans[a] * v);
            if (a == 0) {
                best = q;
                std::fill(arg.begin(), arg.end(), 0);
            } else {
                for (int s = 0; s < n; ++s)
                    if (q(s) > best(s)) {
                        best(s) = q(s);
                        arg[s] = a;
                    }
            }
        }
        res.residual = (best - v).cwiseAbs().maxCoeff();
        res.residual_history.push_back(res.residual);
        v = best;
        res.iterations = iter;
        if (res.residual <= options.epsilon) {
            res.value = v;
            res.policy = arg;
            return res;
        }
    }
    throw SolverError("solver: no convergence within max_iterations", res.residual);
}

Eigen::VectorXd evaluate_policy(const DenseMdp& mdp, const std::vector<int>& policy,
                                double gamma) {
    const int n = mdp.num_states();
    if (static_cast<int>(policy.size()) != n)
        throw ShapeError("solver: policy length does not match the MDP");
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd r(n);
    for (int s = 0; s < n; ++s) {
        if (policy[s] < 0 || policy[s] >= mdp.num_actions())
            throw ConfigError("solver: policy action out of range");
        a.row(s) -= gamma * mdp.trans[policy[s]].row(s);
        r(s) = mdp.reward(s, policy[s]);
    }
    return a.partialPivLu().solve(r);
}

}  // namespace mrcs
