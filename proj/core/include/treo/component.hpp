#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

namespace treo {

class SemanticSort;

// Payload base for component instances. Concrete sorts derive their own
// payload types and downcast; equality is structural and is what definition
// determinism and membership tests observe.
class ComponentBase {
public:
    virtual ~ComponentBase() = default;
    virtual bool equals(const ComponentBase& other) const = 0;
    virtual std::string describe() const = 0;
};

// Value-semantic handle for a component instance of some sort. The creation
// id gives components a stable order inside one evaluation, which keeps
// comprehension folds deterministic when solutions bind components.
class Component {
public:
    Component() = default;
    Component(std::shared_ptr<const ComponentBase> impl, const SemanticSort* sort)
        : impl_(std::move(impl)), sort_(sort), uid_(next_uid())
    {
    }

    bool empty() const { return impl_ == nullptr; }
    const ComponentBase& payload() const { return *impl_; }
    const std::shared_ptr<const ComponentBase>& ptr() const { return impl_; }
    const SemanticSort* sort() const { return sort_; }
    uint64_t uid() const { return uid_; }

    bool structurally_equal(const Component& other) const
    {
        if (impl_ == other.impl_)
            return true;
        if (!impl_ || !other.impl_)
            return false;
        return impl_->equals(*other.impl_);
    }

private:
    static uint64_t next_uid()
    {
        static std::atomic<uint64_t> counter{0};
        return ++counter;
    }

    std::shared_ptr<const ComponentBase> impl_;
    const SemanticSort* sort_ = nullptr;
    uint64_t uid_ = 0;
};

} // namespace treo
