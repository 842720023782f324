#include "minrank/index_coding.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>

#include "minrank/error.hpp"
#include "minrank/linalg.hpp"
#include "minrank/rng.hpp"

namespace minrank {

namespace {

bool blank_or_comment(std::string_view line) {
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == '\r') continue;
        return ch == '#';
    }
    return true;
}

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

unsigned parse_uint(const std::string& tok, std::size_t lineno) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw Error(Errc::format,
                    "line " + std::to_string(lineno) + ": expected an integer, got '" + tok + "'");
    return v;
}

struct RawReceiver {
    std::size_t id;  // 1-based
    std::vector<std::size_t> wants;
    std::vector<std::size_t> has;
};

}  // namespace

IndexCodingProblem parse_problem(std::string_view text) {
    unsigned q = 2;
    std::size_t block = 1;
    bool have_field = false, have_block = false, have_messages = false;
    std::size_t messages = 0;
    std::vector<RawReceiver> raw;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++lineno;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (blank_or_comment(line)) continue;

        auto toks = split_tokens(line);
        const std::string& key = toks[0];
        if (key == "field") {
            if (have_field)
                throw Error(Errc::format, "line " + std::to_string(lineno) + ": duplicate 'field'");
            if (toks.size() != 2)
                throw Error(Errc::format,
                            "line " + std::to_string(lineno) + ": expected 'field <q>'");
            q = parse_uint(toks[1], lineno);
            have_field = true;
        } else if (key == "block") {
            if (have_block)
                throw Error(Errc::format, "line " + std::to_string(lineno) + ": duplicate 'block'");
            if (toks.size() != 2)
                throw Error(Errc::format,
                            "line " + std::to_string(lineno) + ": expected 'block <n>'");
            block = parse_uint(toks[1], lineno);
            if (block < 1)
                throw Error(Errc::semantic,
                            "line " + std::to_string(lineno) + ": block length must be >= 1");
            have_block = true;
        } else if (key == "messages") {
            if (have_messages)
                throw Error(Errc::format,
                            "line " + std::to_string(lineno) + ": duplicate 'messages'");
            if (toks.size() != 2)
                throw Error(Errc::format,
                            "line " + std::to_string(lineno) + ": expected 'messages <count>'");
            messages = parse_uint(toks[1], lineno);
            if (messages < 1)
                throw Error(Errc::semantic,
                            "line " + std::to_string(lineno) + ": need at least one message");
            have_messages = true;
        } else if (key == "receiver") {
            if (!have_messages)
                throw Error(Errc::semantic, "line " + std::to_string(lineno) +
                                                ": 'messages' must be declared before receivers");
            RawReceiver r;
            std::size_t t = 1;
            if (t >= toks.size())
                throw Error(Errc::format,
                            "line " + std::to_string(lineno) + ": missing receiver number");
            r.id = parse_uint(toks[t++], lineno);
            if (t >= toks.size() || toks[t] != "wants")
                throw Error(Errc::format,
                            "line " + std::to_string(lineno) + ": expected 'wants'");
            ++t;
            while (t < toks.size() && toks[t] != "has")
                r.wants.push_back(parse_uint(toks[t++], lineno));
            if (r.wants.empty())
                throw Error(Errc::format, "line " + std::to_string(lineno) +
                                              ": receiver must want at least one message");
            if (t >= toks.size() || toks[t] != "has")
                throw Error(Errc::format, "line " + std::to_string(lineno) + ": expected 'has'");
            ++t;
            while (t < toks.size()) r.has.push_back(parse_uint(toks[t++], lineno));

            for (std::size_t w : r.wants)
                if (w < 1 || w > messages)
                    throw Error(Errc::semantic, "line " + std::to_string(lineno) +
                                                    ": wanted message " + std::to_string(w) +
                                                    " out of range");
            std::vector<std::size_t> seen;
            for (std::size_t h : r.has) {
                if (h < 1 || h > messages)
                    throw Error(Errc::semantic, "line " + std::to_string(lineno) +
                                                    ": side-information message " +
                                                    std::to_string(h) + " out of range");
                if (std::find(seen.begin(), seen.end(), h) != seen.end())
                    throw Error(Errc::semantic, "line " + std::to_string(lineno) +
                                                    ": duplicate side-information index " +
                                                    std::to_string(h));
                seen.push_back(h);
                for (std::size_t w : r.wants)
                    if (w == h)
                        throw Error(Errc::semantic,
                                    "line " + std::to_string(lineno) + ": receiver " +
                                        std::to_string(r.id) + " both wants and has message " +
                                        std::to_string(w));
            }
            raw.push_back(std::move(r));
        } else {
            throw Error(Errc::format,
                        "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }

    if (!have_messages) throw Error(Errc::format, "missing 'messages' declaration");
    if (raw.empty()) throw Error(Errc::semantic, "problem declares no receivers");

    std::sort(raw.begin(), raw.end(),
              [](const RawReceiver& a, const RawReceiver& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (i > 0 && raw[i].id == raw[i - 1].id)
            throw Error(Errc::semantic,
                        "receiver " + std::to_string(raw[i].id) + " declared twice");
        if (raw[i].id != i + 1)
            throw Error(Errc::semantic, "receiver numbers must be exactly 1..R");
    }

    IndexCodingProblem p;
    p.message_count = messages;
    p.field = FieldSpec(q);
    p.block_length = block;
    for (const RawReceiver& r : raw) {
        for (std::size_t w : r.wants) {
            Receiver rec;
            rec.wants = w - 1;
            for (std::size_t h : r.has) rec.has.push_back(h - 1);
            std::sort(rec.has.begin(), rec.has.end());
            rec.orig_id = r.id;
            p.receivers.push_back(std::move(rec));
        }
    }
    return p;
}

MaskedMatrix build_matrix(const IndexCodingProblem& p) {
    MaskedMatrix pattern(p.field, p.message_count, p.receivers.size());
    for (std::size_t j = 0; j < p.receivers.size(); ++j) {
        const Receiver& r = p.receivers[j];
        for (std::size_t i = 0; i < p.message_count; ++i) pattern.set_value(i, j, 0);
        pattern.set_value(r.wants, j, 1);
        for (std::size_t h : r.has) pattern.set_erased(h, j);
    }
    return p.block_length > 1 ? pattern.blow_up(p.block_length) : pattern;
}

IndexCode extract_code(const GFMatrix& completed, const IndexCodingProblem& p) {
    MaskedMatrix mask = build_matrix(p);
    if (completed.rows() != mask.rows() || completed.cols() != mask.cols() ||
        completed.field() != mask.field())
        throw Error(Errc::validity, "completed matrix does not match the problem dimensions");
    if (!MaskedMatrix::from_gf(completed).agrees_with_mask(mask))
        throw Error(Errc::validity, "completed matrix disagrees with the problem mask");

    const FieldSpec& f = completed.field();
    std::size_t n = p.block_length;
    RrefResult r = rref(completed);
    std::size_t k = r.pivot_cols.size();

    IndexCode code;
    code.length = k;
    code.chosen_columns = r.pivot_cols;
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<std::uint8_t> coeffs(completed.rows());
        for (std::size_t i = 0; i < completed.rows(); ++i)
            coeffs[i] = completed(i, r.pivot_cols[t]);
        code.transmissions.push_back(std::move(coeffs));
    }

    // RREF row i gives column j's coefficient on the i-th pivot column, so
    // every receiver's expansion over the transmissions is read off directly.
    for (std::size_t j = 0; j < completed.cols(); ++j) {
        Decoder d;
        d.on_transmissions.resize(k);
        for (std::size_t t = 0; t < k; ++t) d.on_transmissions[t] = r.matrix(t, j);
        const Receiver& rec = p.receivers[j / n];
        for (std::size_t h : rec.has) {
            for (std::size_t s = 0; s < n; ++s) {
                std::size_t row = h * n + s;
                std::uint8_t c = f.neg(completed(row, j));
                if (c != 0) d.side_terms.emplace_back(row, c);
            }
        }
        code.decoders.push_back(std::move(d));
    }
    return code;
}

namespace {

// Receiver numbers alone are ambiguous once multi-want splitting or block
// extension is in play, so the label always names the wanted message.
std::string receiver_label(const IndexCodingProblem& p, std::size_t blown_col) {
    const Receiver& rec = p.receivers[blown_col / p.block_length];
    std::string label = "receiver " + std::to_string(rec.orig_id);
    label += " (wants x" + std::to_string(rec.wants + 1);
    if (p.block_length > 1)
        label += " symbol " + std::to_string(blown_col % p.block_length + 1);
    label += ")";
    return label;
}

}  // namespace

VerifyReport verify_code(const IndexCode& code, const IndexCodingProblem& p, std::size_t trials,
                         std::uint64_t seed) {
    const FieldSpec& f = p.field;
    std::size_t n = p.block_length;
    std::size_t blown_rows = p.message_count * n;
    std::size_t blown_cols = p.receivers.size() * n;

    VerifyReport report;
    report.trials = trials;
    if (code.decoders.size() != blown_cols)
        throw Error(Errc::dimension, "decoder count does not match the receiver count");
    for (const auto& t : code.transmissions)
        if (t.size() != blown_rows)
            throw Error(Errc::dimension, "transmission vector length mismatch");

    // Exact check: combining transmissions and side-information corrections
    // must reproduce the wanted message's unit vector.
    report.algebraic_ok = true;
    for (std::size_t j = 0; j < blown_cols; ++j) {
        const Decoder& d = code.decoders[j];
        if (d.on_transmissions.size() != code.transmissions.size())
            throw Error(Errc::dimension, "decoder/transmission length mismatch");
        std::vector<std::uint8_t> v(blown_rows, 0);
        for (std::size_t t = 0; t < code.transmissions.size(); ++t) {
            std::uint8_t w = d.on_transmissions[t];
            if (w == 0) continue;
            for (std::size_t i = 0; i < blown_rows; ++i)
                v[i] = f.add(v[i], f.mul(w, code.transmissions[t][i]));
        }
        for (auto [row, coeff] : d.side_terms) v[row] = f.add(v[row], coeff);

        std::size_t want_row = p.receivers[j / n].wants * n + j % n;
        bool ok = true;
        for (std::size_t i = 0; i < blown_rows; ++i)
            if (v[i] != (i == want_row ? 1 : 0)) ok = false;
        if (!ok) {
            report.algebraic_ok = false;
            report.failures.push_back(receiver_label(p, j) + ": algebraic check failed");
        }
    }

    // Monte Carlo check with per-trial derived RNG streams.
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 gen(derive_seed(seed, trial));
        std::vector<std::uint8_t> x(blown_rows);
        for (auto& xi : x) xi = std::uint8_t(gen() % f.q());

        std::vector<std::uint8_t> y(code.transmissions.size(), 0);
        for (std::size_t t = 0; t < code.transmissions.size(); ++t) {
            std::uint8_t acc = 0;
            for (std::size_t i = 0; i < blown_rows; ++i)
                acc = f.add(acc, f.mul(code.transmissions[t][i], x[i]));
            y[t] = acc;
        }
        for (std::size_t j = 0; j < blown_cols; ++j) {
            const Decoder& d = code.decoders[j];
            std::uint8_t decoded = 0;
            for (std::size_t t = 0; t < y.size(); ++t)
                decoded = f.add(decoded, f.mul(d.on_transmissions[t], y[t]));
            for (auto [row, coeff] : d.side_terms)
                decoded = f.add(decoded, f.mul(coeff, x[row]));
            std::size_t want_row = p.receivers[j / n].wants * n + j % n;
            if (decoded != x[want_row]) {
                report.trial_failures += 1;
                if (report.failures.size() < 32)
                    report.failures.push_back(receiver_label(p, j) + ": decode failure in trial " +
                                              std::to_string(trial));
            }
        }
    }

    report.valid = report.algebraic_ok && report.trial_failures == 0;
    return report;
}

DerivedCode verify_transmissions(const IndexCodingProblem& p,
                                 const std::vector<std::vector<std::uint8_t>>& transmissions,
                                 std::size_t trials, std::uint64_t seed) {
    const FieldSpec& f = p.field;
    std::size_t n = p.block_length;
    std::size_t blown_rows = p.message_count * n;
    std::size_t blown_cols = p.receivers.size() * n;
    std::size_t l = transmissions.size();
    for (const auto& t : transmissions)
        if (t.size() != blown_rows)
            throw Error(Errc::dimension, "transmission vectors must have length " +
                                             std::to_string(blown_rows));

    DerivedCode out;
    out.code.length = l;
    out.code.transmissions = transmissions;
    out.report.trials = trials;
    out.report.algebraic_ok = true;

    bool all_decodable = true;
    for (std::size_t j = 0; j < blown_cols; ++j) {
        const Receiver& rec = p.receivers[j / n];
        std::vector<std::size_t> side_rows;
        for (std::size_t h : rec.has)
            for (std::size_t s = 0; s < n; ++s) side_rows.push_back(h * n + s);

        // Wanted unit vector must lie in span(transmissions, side symbols).
        GFMatrix a(f, blown_rows, l + side_rows.size());
        for (std::size_t t = 0; t < l; ++t)
            for (std::size_t i = 0; i < blown_rows; ++i) a.set(i, t, transmissions[t][i]);
        for (std::size_t s = 0; s < side_rows.size(); ++s) a.set(side_rows[s], l + s, 1);
        std::vector<std::uint8_t> e(blown_rows, 0);
        std::size_t want_row = rec.wants * n + j % n;
        e[want_row] = 1;

        AffineSolutionSet sol = solve_linear(a, e);
        Decoder d;
        d.on_transmissions.assign(l, 0);
        if (sol.empty()) {
            all_decodable = false;
            out.report.algebraic_ok = false;
            out.report.failures.push_back(receiver_label(p, j) +
                                          ": cannot decode from the given transmissions");
        } else {
            const auto& c = sol.particular();
            for (std::size_t t = 0; t < l; ++t) d.on_transmissions[t] = c[t];
            for (std::size_t s = 0; s < side_rows.size(); ++s)
                if (c[l + s] != 0) d.side_terms.emplace_back(side_rows[s], c[l + s]);
        }
        out.code.decoders.push_back(std::move(d));
    }

    if (all_decodable) {
        out.report = verify_code(out.code, p, trials, seed);
    } else {
        out.report.valid = false;
    }
    return out;
}

GFMatrix block_diagonal_lift(const GFMatrix& m, std::size_t n) {
    if (n < 1) throw Error(Errc::domain, "block length must be >= 1");
    GFMatrix out(m.field(), m.rows() * n, m.cols() * n);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::uint8_t v = m(i, j);
            if (v == 0) continue;
            for (std::size_t s = 0; s < n; ++s) out.set(i * n + s, j * n + s, v);
        }
    return out;
}

}  // namespace minrank
