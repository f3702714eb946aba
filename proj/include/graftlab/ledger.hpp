#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "graftlab/errors.hpp"

namespace graftlab {

struct LedgerError : Error {
    using Error::Error;
};

struct Pin {
    double value = 0.0;
    double lo = 0.0, hi = 0.0;
    std::string note;

    bool contains(double x) const { return x >= lo && x <= hi; }
};

// (experiment id, constant) -> pinned band. Pins are only added; replacing
// one needs overwrite = true.
class Ledger {
public:
    static Ledger load(const std::filesystem::path& file);  // missing file -> empty
    static Ledger parse(const std::string& text);
    std::string str() const;
    void save(const std::filesystem::path& file) const;

    std::optional<Pin> find(const std::string& id, const std::string& name) const;
    const Pin& at(const std::string& id, const std::string& name) const;
    void pin(const std::string& id, const std::string& name, const Pin& p, bool overwrite = false);
    size_t size() const;

    // load, edit and save while holding an exclusive lock on file.lock
    static void update(const std::filesystem::path& file, const std::function<void(Ledger&)>& edit);

private:
    std::map<std::string, std::map<std::string, Pin>> entries_;
};

}  // namespace graftlab
