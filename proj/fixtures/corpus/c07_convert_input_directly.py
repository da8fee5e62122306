def rain():
    total = 0
    days = 0
    while True:
        try:
            number = float(input("Rainfall: "))
        except ValueError:
            continue
        if number == -999:
            break
        if number < 0:
            continue
        total = total + number
        days = days + 1
    if days > 0:
        return total / days
    return 0

if __name__ == "__main__":
    print(rain())
