#include "qlc/assess/exercise.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace qlc::assess {

using nlohmann::json;

namespace {

Expectation expectation_from_json(const json& j)
{
    Expectation e;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "terminates") {
        e.kind = Expectation::Kind::Terminates;
    } else if (kind == "noFault") {
        e.kind = Expectation::Kind::NoFault;
    } else if (kind == "outputNumber" || kind == "returnedValue") {
        e.kind = kind == "outputNumber" ? Expectation::Kind::OutputNumber : Expectation::Kind::ReturnedValue;
        e.value = j.at("value").get<double>();
        e.tolerance = j.value("tolerance", 0.0);
        if (e.tolerance < 0) {
            throw ExerciseFormatError("expectation tolerance must not be negative");
        }
    } else {
        throw ExerciseFormatError("unknown expectation kind '" + kind + "'");
    }
    return e;
}

json expectation_to_json(const Expectation& e)
{
    json j{{"kind", to_string(e.kind)}};
    if (e.kind == Expectation::Kind::OutputNumber || e.kind == Expectation::Kind::ReturnedValue) {
        j["value"] = e.value;
        j["tolerance"] = e.tolerance;
    }
    return j;
}

} // namespace

std::string_view to_string(Expectation::Kind kind)
{
    switch (kind) {
    case Expectation::Kind::Terminates: return "terminates";
    case Expectation::Kind::NoFault: return "noFault";
    case Expectation::Kind::OutputNumber: return "outputNumber";
    case Expectation::Kind::ReturnedValue: return "returnedValue";
    }
    return "?";
}

ExerciseSpec exercise_from_json(const json& j)
{
    try {
        ExerciseSpec spec;
        spec.id = j.at("id").get<std::string>();
        spec.title = j.value("title", spec.id);
        spec.entry_function = j.at("entryFunction").get<std::string>();
        spec.sentinel = j.value("sentinel", std::int64_t{-999});
        spec.max_submissions = j.value("maxSubmissions", 10);
        spec.step_limit = j.value("stepLimit", std::int64_t{100'000});
        if (j.contains("points")) {
            spec.program_points_max = j.at("points").value("program", 95);
            spec.qlc_points_max = j.at("points").value("qlc", 5);
        }
        std::set<std::string> names;
        for (const json& jt : j.at("tests")) {
            FunctionalTestCase t;
            t.name = jt.at("name").get<std::string>();
            t.description = jt.value("description", std::string());
            t.inputs = jt.at("inputs").get<std::vector<std::string>>();
            const json& expect = jt.at("expect");
            if (expect.is_array()) {
                for (const json& e : expect) {
                    t.expect.push_back(expectation_from_json(e));
                }
            } else {
                t.expect.push_back(expectation_from_json(expect));
            }
            if (!names.insert(t.name).second) {
                throw ExerciseFormatError("duplicate test name '" + t.name + "'");
            }
            spec.tests.push_back(std::move(t));
        }
        if (spec.max_submissions < 1) {
            throw ExerciseFormatError("maxSubmissions must be at least 1");
        }
        if (spec.program_points_max + spec.qlc_points_max != 100) {
            throw ExerciseFormatError("program and questionnaire points must add up to 100");
        }
        if (spec.tests.empty()) {
            throw ExerciseFormatError("an exercise needs at least one test");
        }
        if (spec.step_limit <= 0) {
            throw ExerciseFormatError("stepLimit must be positive");
        }
        return spec;
    } catch (const json::exception& e) {
        throw ExerciseFormatError(std::string("malformed exercise: ") + e.what());
    }
}

json exercise_to_json(const ExerciseSpec& spec)
{
    json tests = json::array();
    for (const FunctionalTestCase& t : spec.tests) {
        json expect = json::array();
        for (const Expectation& e : t.expect) {
            expect.push_back(expectation_to_json(e));
        }
        tests.push_back(json{{"name", t.name}, {"description", t.description}, {"inputs", t.inputs}, {"expect", expect}});
    }
    return json{{"id", spec.id},
                {"title", spec.title},
                {"entryFunction", spec.entry_function},
                {"sentinel", spec.sentinel},
                {"maxSubmissions", spec.max_submissions},
                {"stepLimit", spec.step_limit},
                {"points", {{"program", spec.program_points_max}, {"qlc", spec.qlc_points_max}}},
                {"tests", tests}};
}

ExerciseSpec load_exercise(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ExerciseFormatError("cannot open exercise file " + path.string());
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ExerciseFormatError(path.string() + " is not valid JSON");
    }
    return exercise_from_json(j);
}

std::vector<ExerciseSpec> load_exercise_dir(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<ExerciseSpec> out;
    std::set<std::string> ids;
    for (const auto& f : files) {
        ExerciseSpec spec = load_exercise(f);
        if (!ids.insert(spec.id).second) {
            throw ExerciseFormatError("two exercise files use the id '" + spec.id + "'");
        }
        out.push_back(std::move(spec));
    }
    return out;
}

} // namespace qlc::assess
