#include "graftlab/ledger.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace graftlab {

using json = nlohmann::json;

Ledger Ledger::parse(const std::string& text) {
    Ledger out;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("ledger: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("ledger: top level must be an object");
    for (const auto& [id, consts] : j.items()) {
        if (!consts.is_object()) throw ParseError("ledger: entry " + id + " must be an object");
        for (const auto& [name, v] : consts.items()) {
            Pin p;
            try {
                p.value = v.at("value").get<double>();
                p.lo = v.at("lo").get<double>();
                p.hi = v.at("hi").get<double>();
                if (v.contains("note")) p.note = v.at("note").get<std::string>();
            } catch (const json::exception& e) {
                throw ParseError("ledger: " + id + "/" + name + ": " + e.what());
            }
            for (const auto& [key, _] : v.items())
                if (key != "value" && key != "lo" && key != "hi" && key != "note")
                    throw ParseError("ledger: unknown key " + key + " in " + id + "/" + name);
            if (!(p.lo <= p.hi)) throw ParseError("ledger: empty band for " + id + "/" + name);
            out.entries_[id][name] = p;
        }
    }
    return out;
}

Ledger Ledger::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) return Ledger{};
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Ledger::str() const {
    json j = json::object();
    for (const auto& [id, consts] : entries_)
        for (const auto& [name, p] : consts) {
            json v{{"value", p.value}, {"lo", p.lo}, {"hi", p.hi}};
            if (!p.note.empty()) v["note"] = p.note;
            j[id][name] = v;
        }
    return j.dump(2) + "\n";
}

void Ledger::save(const std::filesystem::path& file) const {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw LedgerError("ledger: cannot write " + tmp.string());
        out << str();
    }
    std::filesystem::rename(tmp, file);
}

std::optional<Pin> Ledger::find(const std::string& id, const std::string& name) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) return std::nullopt;
    auto jt = it->second.find(name);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

const Pin& Ledger::at(const std::string& id, const std::string& name) const {
    auto it = entries_.find(id);
    if (it != entries_.end()) {
        auto jt = it->second.find(name);
        if (jt != it->second.end()) return jt->second;
    }
    throw LedgerError("ledger: no pin for " + id + "/" + name);
}

void Ledger::pin(const std::string& id, const std::string& name, const Pin& p, bool overwrite) {
    if (!(p.lo <= p.hi)) throw LedgerError("ledger: empty band for " + id + "/" + name);
    auto& slot = entries_[id];
    if (slot.count(name) && !overwrite)
        throw LedgerError("ledger: " + id + "/" + name + " is already pinned (overwrite not requested)");
    slot[name] = p;
}

size_t Ledger::size() const {
    size_t n = 0;
    for (const auto& [_, consts] : entries_) n += consts.size();
    return n;
}

void Ledger::update(const std::filesystem::path& file, const std::function<void(Ledger&)>& edit) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    auto lockPath = file;
    lockPath += ".lock";
    int fd = ::open(lockPath.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd < 0) throw LedgerError("ledger: cannot open lock " + lockPath.string());
    if (::flock(fd, LOCK_EX) != 0) {
        ::close(fd);
        throw LedgerError("ledger: cannot lock " + lockPath.string());
    }
    try {
        Ledger l = load(file);
        edit(l);
        l.save(file);
    } catch (...) {
        ::flock(fd, LOCK_UN);
        ::close(fd);
        throw;
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
}

}  // namespace graftlab
