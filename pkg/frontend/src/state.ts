// View state and back-navigation history. Every state change maps to one
// API call; refocusing pushes the prior state so Back always restores it.

import type { Language } from "./api.js";

export interface ViewState {
  focus: string;
  language: Language;
  radius: number;
  selectedArticle?: string;
}

export class ViewHistory {
  private readonly stack: ViewState[] = [];

  constructor(private current_: ViewState) {}

  get current(): ViewState {
    return this.current_;
  }

  push(next: ViewState): void {
    this.stack.push(this.current_);
    this.current_ = next;
  }

  replace(next: ViewState): void {
    this.current_ = next;
  }

  back(): ViewState | undefined {
    const previous = this.stack.pop();
    if (previous !== undefined) {
      this.current_ = previous;
    }
    return previous;
  }

  get depth(): number {
    return this.stack.length;
  }
}
