#ifndef RMC_SMALLVEC_HPP
#define RMC_SMALLVEC_HPP

#include <algorithm>
#include <cstddef>
#include <cstring>
#include <initializer_list>
#include <type_traits>

namespace rmc {

// Inline-storage vector for trivially copyable element types. Field elements
// in small extensions stay allocation-free on the hot paths.
template <class T, size_t N = 4>
class SmallVec {
    static_assert(std::is_trivially_copyable_v<T>);

public:
    SmallVec() = default;
    explicit SmallVec(size_t n, const T& fill = T()) { assign(n, fill); }
    SmallVec(std::initializer_list<T> il) {
        reserve(il.size());
        for (const T& v : il) data()[size_++] = v;
    }

    SmallVec(const SmallVec& o) { copy_from(o); }
    SmallVec(SmallVec&& o) noexcept { move_from(o); }
    SmallVec& operator=(const SmallVec& o) {
        if (this != &o) { release(); copy_from(o); }
        return *this;
    }
    SmallVec& operator=(SmallVec&& o) noexcept {
        if (this != &o) { release(); move_from(o); }
        return *this;
    }
    ~SmallVec() { release(); }

    T* data() { return heap_ ? heap_ : inl_; }
    const T* data() const { return heap_ ? heap_ : inl_; }
    size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    T& operator[](size_t i) { return data()[i]; }
    const T& operator[](size_t i) const { return data()[i]; }
    T& back() { return data()[size_ - 1]; }
    const T& back() const { return data()[size_ - 1]; }

    T* begin() { return data(); }
    T* end() { return data() + size_; }
    const T* begin() const { return data(); }
    const T* end() const { return data() + size_; }

    void clear() { size_ = 0; }

    void reserve(size_t n) {
        if (n <= cap_) return;
        size_t nc = std::max(n, cap_ * 2);
        T* nh = new T[nc];
        std::memcpy(nh, data(), size_ * sizeof(T));
        delete[] heap_;
        heap_ = nh;
        cap_ = nc;
    }

    void resize(size_t n, const T& fill = T()) {
        reserve(n);
        for (size_t i = size_; i < n; i++) data()[i] = fill;
        size_ = n;
    }

    void assign(size_t n, const T& fill) {
        clear();
        resize(n, fill);
    }

    void push_back(const T& v) {
        reserve(size_ + 1);
        data()[size_++] = v;
    }
    void pop_back() { size_--; }

    friend bool operator==(const SmallVec& a, const SmallVec& b) {
        if (a.size_ != b.size_) return false;
        return std::memcmp(a.data(), b.data(), a.size_ * sizeof(T)) == 0;
    }
    friend bool operator!=(const SmallVec& a, const SmallVec& b) { return !(a == b); }

private:
    void copy_from(const SmallVec& o) {
        heap_ = nullptr;
        cap_ = N;
        size_ = 0;
        reserve(o.size_);
        std::memcpy(data(), o.data(), o.size_ * sizeof(T));
        size_ = o.size_;
    }
    void move_from(SmallVec& o) noexcept {
        if (o.heap_) {
            heap_ = o.heap_;
            cap_ = o.cap_;
            size_ = o.size_;
            o.heap_ = nullptr;
            o.cap_ = N;
            o.size_ = 0;
        } else {
            heap_ = nullptr;
            cap_ = N;
            size_ = o.size_;
            std::memcpy(inl_, o.inl_, o.size_ * sizeof(T));
        }
    }
    void release() {
        delete[] heap_;
        heap_ = nullptr;
        cap_ = N;
        size_ = 0;
    }

    T inl_[N];
    T* heap_ = nullptr;
    size_t size_ = 0;
    size_t cap_ = N;
};

} // namespace rmc

#endif
