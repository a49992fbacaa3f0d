// Tiny DOM construction helper; no framework.
export function el(tag, attrs = {}, ...children) {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (typeof value === "function") {
            node.addEventListener(key.replace(/^on/, ""), value);
        }
        else if (typeof value === "boolean") {
            if (value)
                node.setAttribute(key, "");
        }
        else {
            node.setAttribute(key, value);
        }
    }
    node.append(...children);
    return node;
}
export function clear(node) {
    node.replaceChildren();
    return node;
}
