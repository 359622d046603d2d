#include "freespec/json_io.hpp"

#include <fstream>

namespace freespec {

Json matrix_to_json(const Matrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw std::runtime_error("matrix JSON: data length does not match rows*cols");
    Matrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jj = 0; jj < cols; ++jj, ++k)
            m(i, jj) = Complex(data[k].at(0).get<double>(), data[k].at(1).get<double>());
    return m;
}

Json tuple_to_json(const MatrixTuple& t) {
    Json entries = Json::array();
    for (int j = 0; j < t.g(); ++j) entries.push_back(matrix_to_json(t[j]));
    return {{"g", t.g()}, {"entries", std::move(entries)}};
}

MatrixTuple tuple_from_json(const Json& j) {
    const int g = j.at("g").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != g)
        throw std::runtime_error("tuple JSON: entry count does not match g");
    std::vector<Matrix> ms;
    for (const auto& e : entries) ms.push_back(matrix_from_json(e));
    return MatrixTuple(std::move(ms));
}

Json context_to_json(const PencilContext& ctx) {
    return {{"s", ctx.s}, {"C1", matrix_to_json(ctx.C1)}, {"C2", matrix_to_json(ctx.C2)}};
}

PencilContext context_from_json(const Json& j) {
    PencilContext ctx(matrix_from_json(j.at("C1")), matrix_from_json(j.at("C2")));
    if (j.contains("s") && j.at("s").get<Eigen::Index>() != ctx.s)
        throw std::runtime_error("context JSON: s does not match C1/C2 size");
    return ctx;
}

Json jet_to_json(const AutJet& jet) {
    return {{"b",
             {{jet.b[0].real(), jet.b[0].imag()}, {jet.b[1].real(), jet.b[1].imag()}}},
            {"L", matrix_to_json(jet.L)}};
}

AutJet jet_from_json(const Json& j) {
    const auto& b = j.at("b");
    if (b.size() != 2) throw std::runtime_error("jet JSON: b must have two entries");
    AutJet jet;
    jet.b[0] = Complex(b[0].at(0).get<double>(), b[0].at(1).get<double>());
    jet.b[1] = Complex(b[1].at(0).get<double>(), b[1].at(1).get<double>());
    jet.L = matrix_from_json(j.at("L"));
    if (jet.L.rows() != 2 || jet.L.cols() != 2) throw std::runtime_error("jet JSON: L must be 2x2");
    return jet;
}

Json series_to_json(const PowerSeries& f) {
    Json terms = Json::array();
    for (const auto& [w, coeff] : f.coeffs.terms()) {
        Json word = Json::array();
        for (int letter : w) word.push_back(letter + 1);
        terms.push_back({{"word", std::move(word)}, {"coeff", matrix_to_json(coeff)}});
    }
    return {{"g", f.coeffs.g()}, {"trunc", f.trunc}, {"terms", std::move(terms)}};
}

PowerSeries series_from_json(const Json& j) {
    const int g = j.at("g").get<int>();
    const int trunc = j.at("trunc").get<int>();
    const auto& terms = j.at("terms");
    Eigen::Index d = 1, e = 1;
    if (!terms.empty()) {
        d = terms[0].at("coeff").at("rows").get<Eigen::Index>();
        e = terms[0].at("coeff").at("cols").get<Eigen::Index>();
    }
    FreePolynomial p(g, d, e);
    for (const auto& t : terms) {
        Word w;
        for (const auto& letter : t.at("word")) w.push_back(letter.get<int>() - 1);
        p.add_term(w, matrix_from_json(t.at("coeff")));
    }
    return PowerSeries(std::move(p), trunc);
}

Json classification_to_json(const Classification& c) {
    return {{"region", to_string(c.region)}, {"margin", c.margin}};
}

Json quad_to_json(const QuadClassification& q) {
    return {{"via_pencil", classification_to_json(q.via_pencil)},
            {"via_contraction", classification_to_json(q.via_contraction)},
            {"via_left_defect", classification_to_json(q.via_left_defect)},
            {"via_right_defect", classification_to_json(q.via_right_defect)},
            {"agree", q.agree()}};
}

Json hypotheses_to_json(const HypothesesReport& rep) {
    return {{"c1_sigma_min", rep.c1_sigma_min},
            {"c2_sigma_min", rep.c2_sigma_min},
            {"c1_invertible", rep.c1_invertible},
            {"c2_invertible", rep.c2_invertible},
            {"row_dim", rep.row_dim},
            {"col_dim", rep.col_dim},
            {"row_generates", rep.row_generates},
            {"col_generates", rep.col_generates},
            {"row_sum_lambda_max", rep.row_sum_lambda_max},
            {"col_sum_lambda_max", rep.col_sum_lambda_max},
            {"row_sum_min_eig", rep.row_sum_min_eig},
            {"col_sum_min_eig", rep.col_sum_min_eig},
            {"row_sum_exceeds_one", rep.row_sum_exceeds_one},
            {"col_sum_exceeds_one", rep.col_sum_exceeds_one},
            {"all_pass", rep.all_pass()}};
}

Json certificate_to_json(const BallMinimalCertificate& cert) {
    Json projections = Json::array();
    for (const auto& p : cert.projections) projections.push_back(matrix_to_json(p));
    return {{"hypotheses_ok", cert.hypotheses_ok},
            {"hypotheses", hypotheses_to_json(cert.hypotheses)},
            {"algebra_dim", cert.algebra_dim},
            {"expected_dim", cert.expected_dim},
            {"commutant_dim", cert.commutant_dim},
            {"reducing_projections", std::move(projections)},
            {"projections_match", cert.projections_match},
            {"rho_row", cert.rho_row},
            {"rho_col", cert.rho_col},
            {"witnesses",
             {{"row_in", classification_to_json(cert.row_witness_in)},
              {"row_out", classification_to_json(cert.row_witness_out)},
              {"col_in", classification_to_json(cert.col_witness_in)},
              {"col_out", classification_to_json(cert.col_witness_out)}}},
            {"witnesses_ok", cert.witnesses_ok},
            {"certified", cert.certified}};
}

Json jet_classification_to_json(const JetClassification& c) {
    return {{"verdict", to_string(c.verdict)},
            {"failed_condition", c.failed_condition},
            {"detail", c.detail}};
}

Json ball_agreement_to_json(const BallAgreementReport& rep) {
    Json j = {{"trials", rep.trials},
              {"agreements", rep.agreements},
              {"band_skipped", rep.band_skipped},
              {"witness_found", rep.witness_found}};
    if (rep.witness_found) {
        j["witness_trial"] = rep.witness_trial;
        j["witness_level"] = rep.witness_level;
        j["witness_x"] = tuple_to_json(rep.witness_x);
        j["witness_margin_B"] = rep.witness_margin_B;
        j["witness_margin_E"] = rep.witness_margin_E;
    }
    return j;
}

Json circular_probe_to_json(const CircularProbeReport& rep) {
    Json j = {{"trials", rep.trials},
              {"inside_samples", rep.inside_samples},
              {"witness_found", rep.witness_found},
              {"fixed_candidate_tested", rep.fixed_candidate_tested},
              {"fixed_candidate_is_witness", rep.fixed_candidate_is_witness},
              {"fixed_margin_before", rep.fixed_margin_before},
              {"fixed_margin_after", rep.fixed_margin_after}};
    if (rep.witness_found) {
        j["witness_trial"] = rep.witness_trial;
        j["witness_margin_before"] = rep.witness_margin_before;
        j["witness_margin_after"] = rep.witness_margin_after;
        j["witness_x"] = tuple_to_json(rep.witness_x);
        j["witness_u"] = matrix_to_json(rep.witness_u);
    }
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace freespec
